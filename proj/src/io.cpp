#include "karamata/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "karamata/error.hpp"

namespace karamata {

Json matrix_to_json(const HermitianMatrix& a) {
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      re.push_back(a.matrix()(i, j).real());
      im.push_back(a.matrix()(i, j).imag());
    }
  return Json{{"dim", a.dim()}, {"re", re}, {"im", im}};
}

HermitianMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    throw UsageError("matrix JSON needs fields dim and re (im optional)");
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw ShapeError("matrix dim must be positive");
  const auto n = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  const Json& re = j.at("re");
  const Json im = j.contains("im") ? j.at("im") : Json(std::vector<double>(n, 0.0));
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n)
    throw ShapeError("re and im must hold dim*dim entries");
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const auto idx = static_cast<std::size_t>(i * dim + k);
      m(i, k) = {re[idx].get<double>(), im[idx].get<double>()};
    }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file '" + path + "'");
  try {
    return matrix_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw UsageError("malformed matrix file '" + path + "': " + e.what());
  }
}

namespace {

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const ParamRecord& ctx) {
  Json j;
  j["dim"] = ctx.dim;
  j["n"] = ctx.n;
  j["r"] = optional_real(ctx.r);
  j["alpha"] = optional_real(ctx.alpha);
  j["eps"] = optional_real(ctx.eps);
  j["m"] = optional_real(ctx.lower);
  j["M"] = optional_real(ctx.upper);
  j["seed"] = ctx.seed;
  j["function"] = ctx.function;
  j["variant"] = ctx.variant;
  j["tol"] = ctx.tol;
  return j;
}

Json to_json(const InequalityVerdict& v) {
  Json j;
  j["inequality_id"] = v.inequality_id;
  j["lhs_summary"] = v.lhs_summary;
  j["rhs_summary"] = v.rhs_summary;
  j["margin"] = v.margin;
  j["pass"] = v.pass;
  j["informational"] = v.informational;
  j["context"] = to_json(v.context);
  return j;
}

Json to_json(const TrialReport& r, bool with_timing) {
  Json j;
  j["suite_id"] = r.suite_id;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["informational_failures"] = r.informational_failures;
  j["min_margin"] = std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr);
  j["tol"] = r.tol;
  j["worst_context"] = r.worst_context ? to_json(*r.worst_context) : Json(nullptr);
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string format_csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_header() { return "suite_id,trial,margin,pass,dim,r,alpha,eps,seed"; }

std::string csv_row(const TrialRecord& rec) {
  auto opt = [](const std::optional<double>& v) { return v ? format_csv_real(*v) : std::string(); };
  const ParamRecord& c = rec.context;
  return rec.suite_id + "," + std::to_string(rec.trial) + "," + format_csv_real(rec.margin) + "," +
         (rec.pass ? "true" : "false") + "," + std::to_string(c.dim) + "," + opt(c.r) + "," +
         opt(c.alpha) + "," + opt(c.eps) + "," + std::to_string(c.seed);
}

}  // namespace karamata

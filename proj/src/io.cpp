#include "qopt/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace qopt {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

json state_to_json(const StateArray& state) {
  json j;
  j["version"] = kFormatVersion;
  j["modes"] = state.modes();
  j["cutoffs"] = state.cutoffs();
  j["kind"] = state.is_ket() ? "ket" : "density";
  std::vector<double> re, im;
  if (state.is_ket()) {
    const VectorXcd& a = state.amplitudes();
    re.reserve(a.size());
    im.reserve(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      re.push_back(a[i].real());
      im.push_back(a[i].imag());
    }
  } else {
    const MatrixXcd& r = state.density_matrix();
    re.reserve(r.size());
    im.reserve(r.size());
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index k = 0; k < r.cols(); ++k) {
        re.push_back(r(i, k).real());
        im.push_back(r(i, k).imag());
      }
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

StateArray state_from_json(const json& j) {
  std::vector<int> cutoffs = j.at("cutoffs").get<std::vector<int>>();
  std::string kind = j.at("kind").get<std::string>();
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw DimensionError("re/im arrays differ in length");
  if (kind == "ket") {
    VectorXcd a(re.size());
    for (size_t i = 0; i < re.size(); ++i) a[i] = Complex(re[i], im[i]);
    return StateArray::ket(cutoffs, std::move(a));
  }
  if (kind == "density") {
    Eigen::Index d = Eigen::Index(std::llround(std::sqrt(double(re.size()))));
    if (d * d != Eigen::Index(re.size()))
      throw DimensionError("density payload is not square");
    MatrixXcd r(d, d);
    size_t idx = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k, ++idx)
        r(i, k) = Complex(re[idx], im[idx]);
    return StateArray::density(cutoffs, std::move(r));
  }
  throw DimensionError("unknown state kind: " + kind);
}

void write_wigner_csv(const WignerGrid& grid, std::ostream& os) {
  os << "x,p,w\n";
  for (Eigen::Index i = 0; i < grid.xs.size(); ++i)
    for (Eigen::Index j = 0; j < grid.ps.size(); ++j)
      os << fmt(grid.xs[i]) << ',' << fmt(grid.ps[j]) << ','
         << fmt(grid.w(i, j)) << '\n';
}

json wigner_meta_json(const GridSpec& spec, const NegativityMetrics& m) {
  return json{{"version", kFormatVersion},
              {"xmin", spec.xmin},
              {"xmax", spec.xmax},
              {"pmin", spec.pmin},
              {"pmax", spec.pmax},
              {"nx", spec.nx},
              {"np", spec.np},
              {"normalization", "xp"},
              {"min_value", m.min_value},
              {"min_x", m.min_x},
              {"min_p", m.min_p},
              {"negative_volume", m.negative_volume}};
}

void write_dataset_csv(const QuadratureDataset& data, std::ostream& os) {
  os << "theta,x\n";
  for (size_t i = 0; i < data.size(); ++i)
    os << fmt(data.theta[i]) << ',' << fmt(data.x[i]) << '\n';
}

QuadratureDataset read_dataset_csv(std::istream& is) {
  QuadratureDataset data;
  std::string line;
  if (!std::getline(is, line) || line.rfind("theta,x", 0) != 0)
    throw DimensionError("dataset CSV must start with a 'theta,x' header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DimensionError("malformed dataset row: " + line);
    data.theta.push_back(std::stod(line.substr(0, comma)));
    data.x.push_back(std::stod(line.substr(comma + 1)));
  }
  return data;
}

json dataset_meta_json(const QuadratureDataset& data) {
  return json{{"version", kFormatVersion},
              {"n_samples", data.size()},
              {"seed", data.seed},
              {"eta", data.model.eta},
              {"electronic_noise", data.model.electronic_noise},
              {"source", data.source},
              {"quadrature_convention", "x=(a+adag)/sqrt2, Var_vac=1/2"}};
}

json process_tensor_to_json(const ProcessTensor& t) {
  json j;
  j["version"] = kFormatVersion;
  j["cutoff"] = t.cutoff;
  std::vector<double> re, im;
  re.reserve(t.mat.size());
  im.reserve(t.mat.size());
  for (Eigen::Index i = 0; i < t.mat.rows(); ++i)
    for (Eigen::Index k = 0; k < t.mat.cols(); ++k) {
      re.push_back(t.mat(i, k).real());
      im.push_back(t.mat(i, k).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  j["layout"] = "row (k,l) x column (m,n), row-major";
  return j;
}

ProcessTensor process_tensor_from_json(const json& j) {
  ProcessTensor t;
  t.cutoff = j.at("cutoff").get<int>();
  const Eigen::Index d2 = Eigen::Index(t.cutoff + 1) * (t.cutoff + 1);
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  if (Eigen::Index(re.size()) != d2 * d2 || re.size() != im.size())
    throw DimensionError("process tensor payload has the wrong size");
  t.mat.resize(d2, d2);
  size_t idx = 0;
  for (Eigen::Index i = 0; i < d2; ++i)
    for (Eigen::Index k = 0; k < d2; ++k, ++idx)
      t.mat(i, k) = Complex(re[idx], im[idx]);
  return t;
}

json protocol_report_to_json(const ProtocolReport& rep, bool embed_state) {
  json j;
  j["version"] = kFormatVersion;
  j["weight"] = rep.outcome.weight;
  j["metrics"] = rep.metrics;
  j["params"] = rep.params;
  if (embed_state) j["state"] = state_to_json(rep.outcome.state);
  return j;
}

}  // namespace qopt

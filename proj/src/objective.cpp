#include "spoamp/objective.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "spoamp/errors.hpp"
#include "spoamp/rng.hpp"

namespace spoamp {

std::vector<Eigen::Index> ObjectiveTable::solution_set() const {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(solution_count()));
  std::iota(out.begin(), out.end(), solution_begin);
  return out;
}

std::vector<Eigen::Index> ObjectiveTable::worst_set() const {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(worst_end));
  std::iota(out.begin(), out.end(), Eigen::Index{0});
  return out;
}

ObjectiveTable make_table(Eigen::ArrayXd raw_values, std::string descriptor) {
  const Eigen::Index n = raw_values.size();
  if (n < 2) throw DomainError("objective table needs at least 2 values");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(raw_values[i]))
      throw DomainError("objective value at position " + std::to_string(i) +
                        " is not finite");
  }
  std::sort(raw_values.data(), raw_values.data() + n);
  const double minimum = raw_values[0];
  if (minimum != 0.0) raw_values -= minimum;
  raw_values[0] = 0.0;  // guard against -0.0 and shift rounding

  ObjectiveTable table;
  table.values = std::move(raw_values);
  table.descriptor = std::move(descriptor);
  const double maximum = table.values[n - 1];
  Eigen::Index sol = n - 1;
  while (sol > 0 && table.values[sol - 1] == maximum) --sol;
  Eigen::Index worst = 1;
  while (worst < n && table.values[worst] == 0.0) ++worst;
  table.solution_begin = sol;
  table.worst_end = worst;
  if (maximum == 0.0)
    throw DomainError("objective table is constant; no solution state");
  return table;
}

ObjectiveTable make_binary_table(Eigen::Index n_states, Eigen::Index marked,
                                 double f_max) {
  if (marked < 1 || marked >= n_states)
    throw DomainError("marked count must be in [1, n_states)");
  if (!(f_max > 0.0) || !std::isfinite(f_max))
    throw DomainError("binary table value must be positive and finite");
  Eigen::ArrayXd values = Eigen::ArrayXd::Zero(n_states);
  values.tail(marked) = f_max;
  std::ostringstream desc;
  desc << "binary(n=" << n_states << ",marked=" << marked << ",f_max=" << f_max
       << ")";
  return make_table(std::move(values), desc.str());
}

std::string DistributionSpec::descriptor() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Normal:
      out << "normal(mu=" << mu << ",sigma=" << sigma << ")";
      break;
    case Kind::SkewNormal:
      out << "skew_normal(mu=" << mu << ",sigma=" << sigma << ",alpha=" << alpha
          << ")";
      break;
    case Kind::Exponential:
      out << "exponential(lambda=" << lambda << ")";
      break;
  }
  out << "[seed=" << seed << "]";
  return out.str();
}

std::string InjectiveSpec::descriptor() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Linear: out << "linear"; break;
    case Kind::Quadratic: out << "quadratic"; break;
    case Kind::Cubic: out << "cubic"; break;
    case Kind::Exp10: out << "exp10"; break;
  }
  out << "(n=" << n_states;
  if (scale_divisor) out << ",m=" << *scale_divisor;
  out << ")";
  return out.str();
}

ObjectiveTable sample_distribution(const DistributionSpec& spec, Eigen::Index n) {
  if (n < 2) throw DomainError("sample size must be at least 2");
  switch (spec.kind) {
    case DistributionSpec::Kind::Normal:
    case DistributionSpec::Kind::SkewNormal:
      if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma))
        throw DomainError("sigma must be > 0");
      if (!std::isfinite(spec.alpha)) throw DomainError("alpha must be finite");
      if (!std::isfinite(spec.mu)) throw DomainError("mu must be finite");
      break;
    case DistributionSpec::Kind::Exponential:
      if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda))
        throw DomainError("lambda must be > 0");
      break;
  }

  SplitMix64 rng(spec.seed);
  Eigen::ArrayXd samples(n);
  switch (spec.kind) {
    case DistributionSpec::Kind::Normal:
      for (Eigen::Index i = 0; i < n; ++i)
        samples[i] = spec.mu + spec.sigma * rng.next_normal();
      break;
    case DistributionSpec::Kind::SkewNormal:
      for (Eigen::Index i = 0; i < n; ++i)
        samples[i] = rng.next_skew_normal(spec.mu, spec.sigma, spec.alpha);
      break;
    case DistributionSpec::Kind::Exponential:
      for (Eigen::Index i = 0; i < n; ++i)
        samples[i] = rng.next_exponential(spec.lambda);
      break;
  }

  std::ostringstream desc;
  desc << spec.descriptor() << "[n=" << n << "]";
  return make_table(std::move(samples), desc.str());
}

ObjectiveTable make_injective(const InjectiveSpec& spec) {
  const Eigen::Index n = spec.n_states;
  if (n < 2) throw DomainError("injective table needs at least 2 states");
  if (spec.kind == InjectiveSpec::Kind::Cubic && n > (Eigen::Index{1} << 26))
    throw DomainError("cubic objective overflows double precision for N > 2^26");
  double m = 1.0;
  if (spec.scale_divisor) {
    if (*spec.scale_divisor < 1)
      throw DomainError("scale divisor must be a positive integer");
    m = static_cast<double>(*spec.scale_divisor);
  }

  Eigen::ArrayXd values(n);
  const double u_range = static_cast<double>(n) / m;
  for (Eigen::Index x = 0; x < n; ++x) {
    const double u = static_cast<double>(x) / m;
    switch (spec.kind) {
      case InjectiveSpec::Kind::Linear: values[x] = u; break;
      case InjectiveSpec::Kind::Quadratic: values[x] = u * u; break;
      case InjectiveSpec::Kind::Cubic: values[x] = u * u * u; break;
      case InjectiveSpec::Kind::Exp10:
        values[x] = std::exp2(10.0 * u / u_range);
        break;
    }
  }
  return make_table(std::move(values), spec.descriptor());
}

Eigen::ArrayXd absorb_constraint(const Eigen::ArrayXd& values,
                                 const BoolArray& feasible, double C) {
  if (values.size() != feasible.size())
    throw DimensionError("values and feasibility arrays differ in length");
  if (values.size() == 0) throw DimensionError("empty objective array");
  if (!values.isFinite().all()) throw DomainError("objective values must be finite");
  const double span = values.maxCoeff() - values.minCoeff();
  if (!(C > span))
    throw DomainError("constraint penalty too small: C must exceed " +
                      std::to_string(span));
  Eigen::ArrayXd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (!feasible[i]) out[i] -= C;
  return out;
}

Eigen::ArrayXd shift_nonnegative(const Eigen::ArrayXd& values) {
  if (values.size() == 0) throw DimensionError("empty objective array");
  if (!values.isFinite().all()) throw DomainError("objective values must be finite");
  const double minimum = values.minCoeff();
  if (minimum == 0.0) return values;
  Eigen::ArrayXd out = values - minimum;
  return out;
}

ObjectiveTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open objective file: " + path.string());

  std::vector<double> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    if (line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t");
    const std::string token = line.substr(begin, end - begin + 1);

    char* parse_end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &parse_end);
    if (parse_end != token.c_str() + token.size() || errno == ERANGE)
      throw ParseError("cannot parse objective value '" + token + "'", line_no);
    if (!std::isfinite(v))
      throw ParseError("objective value is not finite", line_no);
    values.push_back(v);
  }
  if (values.size() < 2)
    throw ParseError("objective file needs at least 2 values, got " +
                     std::to_string(values.size()));

  Eigen::ArrayXd raw =
      Eigen::Map<const Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return make_table(std::move(raw), "file:" + path.string());
}

void save_table(const std::filesystem::path& path, const ObjectiveTable& table,
                const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write objective file: " + path.string());
  for (const auto& comment : header_comments) out << "# " << comment << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < table.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", table.values[i]);
    out << buf << "\n";
  }
}

}  // namespace spoamp

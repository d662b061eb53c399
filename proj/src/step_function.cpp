#include "specdens/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "specdens/csv.hpp"

namespace specdens {

namespace {

void validate_atom(double loc, double w) {
  if (!std::isfinite(loc) || !std::isfinite(w))
    throw std::invalid_argument("step function atom must be finite");
  if (loc <= 0.0)
    throw std::invalid_argument("step function locations must be positive");
  if (w <= 0.0)
    throw std::invalid_argument("step function weights must be positive");
}

}  // namespace

StepFunction StepFunction::from_atoms(
    std::vector<std::pair<double, double>> atoms) {
  for (const auto& [l, w] : atoms) validate_atom(l, w);
  std::sort(atoms.begin(), atoms.end());
  StepFunction f;
  for (const auto& [l, w] : atoms) {
    if (!f.locs_.empty() && f.locs_.back() == l) {
      f.weights_.back() += w;
      f.cum_.back() += w;
    } else {
      f.locs_.push_back(l);
      f.weights_.push_back(w);
      f.cum_.push_back(f.cum_.empty() ? w : f.cum_.back() + w);
    }
  }
  return f;
}

StepFunction StepFunction::from_sorted_values(const std::vector<double>& values,
                                              double tol, double weight_each) {
  if (weight_each <= 0.0)
    throw std::invalid_argument("weight_each must be positive");
  if (tol < 0.0) throw std::invalid_argument("cluster tolerance must be >= 0");
  StepFunction f;
  std::size_t i = 0;
  while (i < values.size()) {
    if (i > 0 && values[i] < values[i - 1])
      throw std::invalid_argument("values must be ascending");
    std::size_t j = i;
    double sum = 0.0;
    while (j < values.size() && values[j] - values[i] <= tol &&
           (j == i || values[j] - values[j - 1] <= tol)) {
      sum += values[j];
      ++j;
    }
    double mean = sum / static_cast<double>(j - i);
    validate_atom(mean, weight_each);
    f.locs_.push_back(mean);
    f.weights_.push_back(weight_each * static_cast<double>(j - i));
    f.cum_.push_back((f.cum_.empty() ? 0.0 : f.cum_.back()) +
                     f.weights_.back());
    i = j;
  }
  return f;
}

double StepFunction::first_location() const {
  if (empty()) throw std::logic_error("empty step function has no atoms");
  return locs_.front();
}

double StepFunction::last_location() const {
  if (empty()) throw std::logic_error("empty step function has no atoms");
  return locs_.back();
}

double StepFunction::value(double lambda) const {
  // index of first location > lambda
  auto it = std::upper_bound(locs_.begin(), locs_.end(), lambda);
  if (it == locs_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - locs_.begin()) - 1];
}

double StepFunction::right_inverse(double y) const {
  if (!(y >= 0.0))
    throw std::invalid_argument("right_inverse requires y >= 0");
  // first atom index whose cumulative value exceeds y; F <= y strictly below
  // that location, so the sup is the location itself.
  auto it = std::upper_bound(cum_.begin(), cum_.end(), y);
  if (it == cum_.end()) return kPlusInf;
  return locs_[static_cast<std::size_t>(it - cum_.begin())];
}

StepFunction StepFunction::reciprocal_transform() const {
  StepFunction g;
  g.locs_ = locs_;
  g.weights_.reserve(size());
  g.cum_.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    g.weights_.push_back(weights_[i] / locs_[i]);
    g.cum_.push_back((g.cum_.empty() ? 0.0 : g.cum_.back()) +
                     g.weights_.back());
  }
  return g;
}

double StepFunction::laplace(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("laplace requires t >= 0");
  double sum = 0.0;
  // smallest exponents last so the accumulation is dominated-term stable
  for (std::size_t i = size(); i-- > 0;)
    sum += weights_[i] * std::exp(-locs_[i] * t);
  return sum;
}

StepFunction StepFunction::scaled_weights(double c) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("weight scale must be positive finite");
  StepFunction f;
  f.locs_ = locs_;
  f.weights_.reserve(size());
  f.cum_.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    f.weights_.push_back(weights_[i] * c);
    f.cum_.push_back((f.cum_.empty() ? 0.0 : f.cum_.back()) +
                     f.weights_.back());
  }
  return f;
}

std::vector<std::size_t> StepFunction::indices_in(double lo, double hi) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < size(); ++i)
    if (locs_[i] >= lo && locs_[i] <= hi) idx.push_back(i);
  return idx;
}

void write_step_function(const std::filesystem::path& path,
                         const StepFunction& f, std::uint64_t seed) {
  std::ostringstream os;
  os << seed_header(seed);
  os << "lambda,weight\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << fmt_double(f.location(i)) << "," << fmt_double(f.weight(i)) << "\n";
  atomic_write_file(path, os.str());
}

StepFunction read_step_function(const std::filesystem::path& path) {
  CsvFile file = read_csv_file(path);
  std::vector<std::pair<double, double>> atoms;
  for (const auto& row : file.rows) {
    if (row.size() != 2)
      throw std::runtime_error("step function CSV needs 2 columns");
    if (row[0] == "lambda") continue;  // column header
    atoms.emplace_back(parse_double(row[0]), parse_double(row[1]));
  }
  return StepFunction::from_atoms(std::move(atoms));
}

}  // namespace specdens

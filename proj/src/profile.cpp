#include "relax/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relax/errors.hpp"

namespace relax {

ProfileSet build_profiles(const std::vector<AttributionRecord>& records, StdMode mode) {
  std::array<std::vector<const LayerAttribution*>, kClassCount> correct;
  for (const auto& rec : records) {
    if (rec.truth && *rec.truth == rec.predicted) correct[index_of(rec.predicted)].push_back(&rec.attribution);
  }

  ProfileSet out;
  for (OctClass c : kAllClasses) {
    const auto& rows = correct[index_of(c)];
    if (rows.empty()) continue;
    if (rows.size() < 2) {
      out.skipped.push_back(c);
      continue;
    }
    ClassProfile p{c, {}, {}, rows.size()};
    const double n = static_cast<double>(rows.size());
    for (std::size_t i = 0; i < kLayerCount; ++i) {
      double sum = 0.0;
      for (const auto* a : rows) sum += a->r[i];
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto* a : rows) ss += (a->r[i] - mean) * (a->r[i] - mean);
      p.mean[i] = mean;
      p.std[i] = std::sqrt(ss / (mode == StdMode::kSample ? n - 1.0 : n));
    }
    out.profiles.emplace(c, p);
  }
  return out;
}

DeviationReport deviation_report(const LayerAttribution& a, const ClassProfile& p) {
  DeviationReport d;
  for (std::size_t i = 0; i < kLayerCount; ++i) {
    auto& l = d.layers[i];
    l.observed = a.r[i];
    l.difference = a.r[i] - p.mean[i];
    if (p.std[i] > 0.0) l.z = l.difference / p.std[i];
  }
  return d;
}

FlagDecision flag(const DeviationReport& d, double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ValidationError("flag threshold must be a positive number");
  }
  FlagDecision out;
  for (std::size_t i = 0; i < kLayerCount; ++i) {
    const auto& l = d.layers[i];
    bool offends = false;
    if (l.z) {
      const double az = std::abs(*l.z);
      out.max_abs_z = std::max(out.max_abs_z, az);
      offends = az >= threshold;
    } else {
      offends = l.difference != 0.0;
    }
    if (offends) out.offending_layers.push_back(i);
  }
  out.suspicious = !out.offending_layers.empty();
  return out;
}

HistogramData deviation_histogram(const std::vector<double>& differences, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw ValidationError("histogram bin width must be positive");
  }
  HistogramData h;
  h.bin_width = bin_width;
  if (differences.empty()) return h;

  // floor(x / w) can land one bin off when the division rounds across an edge.
  const auto bin_of = [bin_width](double x) {
    auto k = static_cast<long long>(std::floor(x / bin_width));
    if (x < static_cast<double>(k) * bin_width) --k;
    if (x >= static_cast<double>(k + 1) * bin_width) ++k;
    return k;
  };

  long long kmin = std::numeric_limits<long long>::max();
  long long kmax = std::numeric_limits<long long>::min();
  std::vector<long long> keys;
  keys.reserve(differences.size());
  for (double x : differences) {
    if (!std::isfinite(x)) throw ValidationError("histogram input contains a non-finite value");
    if (std::abs(x / bin_width) > 1e12) throw ValidationError("histogram value too far from zero for bin width");
    const long long k = bin_of(x);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    keys.push_back(k);
  }
  if (kmax - kmin >= 10'000'000) throw ValidationError("histogram would need more than 1e7 bins");

  h.bins.resize(static_cast<std::size_t>(kmax - kmin + 1));
  for (long long k = kmin; k <= kmax; ++k) {
    auto& b = h.bins[static_cast<std::size_t>(k - kmin)];
    b.left = static_cast<double>(k) * bin_width;
    b.right = static_cast<double>(k + 1) * bin_width;
  }
  for (long long k : keys) ++h.bins[static_cast<std::size_t>(k - kmin)].count;
  return h;
}

std::map<std::string, double> class_weights(const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t largest = 0;
  for (const auto& [name, n] : counts) {
    if (n == 0) throw ValidationError("class '" + name + "' has zero samples");
    largest = std::max(largest, n);
  }
  std::map<std::string, double> weights;
  for (const auto& [name, n] : counts) {
    weights[name] = static_cast<double>(largest) / static_cast<double>(n);
  }
  return weights;
}

}  // namespace relax

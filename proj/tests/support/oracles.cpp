#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace natcorpus::testing {

double naive_jsd_percent(const std::map<std::string, std::uint64_t>& p,
                         const std::map<std::string, std::uint64_t>& q) {
  std::set<std::string> support;
  double p_total = 0.0;
  double q_total = 0.0;
  for (const auto& [w, c] : p) {
    support.insert(w);
    p_total += static_cast<double>(c);
  }
  for (const auto& [w, c] : q) {
    support.insert(w);
    q_total += static_cast<double>(c);
  }
  std::vector<double> pv;
  std::vector<double> qv;
  for (const auto& w : support) {
    auto pi = p.find(w);
    auto qi = q.find(w);
    pv.push_back(pi == p.end() ? 0.0 : static_cast<double>(pi->second) / p_total);
    qv.push_back(qi == q.end() ? 0.0 : static_cast<double>(qi->second) / q_total);
  }
  double kl_pm = 0.0;
  double kl_qm = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double m = (pv[i] + qv[i]) / 2.0;
    if (pv[i] > 0) kl_pm += pv[i] * std::log(pv[i] / m);
    if (qv[i] > 0) kl_qm += qv[i] * std::log(qv[i] / m);
  }
  return 100.0 * (kl_pm + kl_qm) / 2.0 / std::log(2.0);
}

namespace {

std::vector<std::vector<std::string>> string_labels(const OracleTree& t, int iterations) {
  const std::size_t n = t.labels.size();
  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (t.parents[v] >= 0) {
      neighbors[v].push_back(static_cast<std::size_t>(t.parents[v]));
      neighbors[static_cast<std::size_t>(t.parents[v])].push_back(v);
    }
  }
  std::vector<std::vector<std::string>> levels;
  std::vector<std::string> current;
  for (auto l : t.labels) current.emplace_back(to_string(l));
  levels.push_back(current);
  for (int h = 0; h < iterations; ++h) {
    std::vector<std::string> next;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::string> around;
      for (auto u : neighbors[v]) around.push_back(current[u]);
      std::sort(around.begin(), around.end());
      std::string label = "(" + current[v] + "|";
      for (std::size_t k = 0; k < around.size(); ++k) label += (k ? "," : "") + around[k];
      next.push_back(label + ")");
    }
    levels.push_back(next);
    current = next;
  }
  return levels;
}

}  // namespace

std::uint64_t cartesian_wl_matches(const OracleTree& a, const OracleTree& b, int h) {
  const auto la = string_labels(a, h);
  const auto lb = string_labels(b, h);
  std::uint64_t matches = 0;
  for (const auto& x : la[static_cast<std::size_t>(h)])
    for (const auto& y : lb[static_cast<std::size_t>(h)])
      if (x == y) ++matches;
  return matches;
}

std::uint64_t cartesian_wl_kernel(const OracleTree& a, const OracleTree& b, int iterations, int first) {
  const auto la = string_labels(a, iterations);
  const auto lb = string_labels(b, iterations);
  std::uint64_t total = 0;
  for (int h = first; h <= iterations; ++h) {
    for (const auto& x : la[static_cast<std::size_t>(h)])
      for (const auto& y : lb[static_cast<std::size_t>(h)])
        if (x == y) ++total;
  }
  return total;
}

double reference_bleu(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis,
                      int max_n) {
  auto grams = [](const std::vector<std::string>& words, int n) {
    std::unordered_map<std::string, int> counts;
    for (int i = 0; i + n <= static_cast<int>(words.size()); ++i) {
      std::string key;
      for (int k = 0; k < n; ++k) key += words[static_cast<std::size_t>(i + k)] + '\x1f';
      ++counts[key];
    }
    return counts;
  };
  double product = 1.0;
  for (int n = 1; n <= max_n; ++n) {
    auto r = grams(reference, n);
    auto h = grams(hypothesis, n);
    int match = 0;
    int total = 0;
    for (auto& [g, c] : h) {
      total += c;
      match += std::min(c, r.count(g) ? r[g] : 0);
    }
    if (n == 1 && match == 0) return 0.0;
    product *= n == 1 ? static_cast<double>(match) / total : (match + 1.0) / (total + 1.0);
  }
  const double r_len = static_cast<double>(reference.size());
  const double h_len = static_cast<double>(hypothesis.size());
  const double bp = h_len >= r_len ? 1.0 : std::exp(1.0 - r_len / h_len);
  return bp * std::pow(product, 1.0 / max_n);
}

}  // namespace natcorpus::testing

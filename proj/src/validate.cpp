#include <algorithm>
#include <map>
#include <set>

#include "mcg/model.hpp"

namespace mcg {

namespace {

class LabelIndex {
 public:
  int add(const CurveLabel& c) {
    auto [it, inserted] = index_.emplace(c, static_cast<int>(labels_.size()));
    if (inserted) labels_.push_back(c);
    return it->second;
  }
  std::optional<int> find(const CurveLabel& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const CurveLabel& at(int k) const { return labels_[k]; }
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<CurveLabel, int> index_;
  std::vector<CurveLabel> labels_;
};

std::string pair_text(const CurveLabel& x, const CurveLabel& y) {
  return "i(" + to_string(x) + "," + to_string(y) + ")";
}

// Action of a (possibly composite) symmetry, or nullopt where some factor
// has no image for the label.
std::optional<CurveLabel> act(const SurfaceModel& m, const std::string& name, const CurveLabel& c) {
  auto factors = m.expand_symmetry(name);
  CurveLabel cur = c;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    int power = it->second;
    if (power < 0) {
      auto order = m.declared_order(it->first);
      if (!order) return std::nullopt;
      power = static_cast<int>(((power % *order) + *order) % *order);
    }
    for (int k = 0; k < power; ++k) {
      auto img = m.try_apply_symmetry(it->first, cur);
      if (!img) return std::nullopt;
      cur = *img;
    }
  }
  return cur;
}

bool acts_on_labels(const SurfaceModel& m, const std::string& name) {
  for (const auto& [f, e] : m.expand_symmetry(name))
    if (!m.has_label_action(f)) return false;
  return true;
}

std::vector<long long> prime_factors(long long m) {
  std::vector<long long> out;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

ValidationReport validate_model(const SurfaceModel& m, int window) {
  ValidationReport report;
  auto window_labels = m.labels_in_window(window);
  report.labels_checked = window_labels.size();

  std::vector<std::string> symmetries;
  for (const auto& s : m.primitive_symmetries())
    if (acts_on_labels(m, s)) symmetries.push_back(s);
  for (const auto& s : m.alias_names())
    if (acts_on_labels(m, s)) symmetries.push_back(s);

  // Window labels first, then every symmetry image that falls outside.
  LabelIndex index;
  for (const auto& c : window_labels) index.add(c);
  const int in_window = static_cast<int>(index.size());
  std::map<std::string, std::vector<int>> image;
  for (const auto& s : symmetries) {
    auto& img = image[s];
    img.assign(in_window, -1);
    for (int x = 0; x < in_window; ++x) {
      auto y = act(m, s, index.at(x));
      if (!y || !m.valid_label(*y)) {
        report.findings.push_back({"range", s + " has no standard image for " + to_string(index.at(x))});
        continue;
      }
      img[x] = index.add(*y);
    }
  }

  const std::size_t total = index.size();
  std::vector<std::vector<char>> meets(total, std::vector<char>(total, 0));
  for (std::size_t x = 0; x < total; ++x) {
    for (const auto& partner : m.meet_partners(index.at(x))) {
      auto y = index.find(partner);
      if (!y) continue;
      meets[x][*y] = meets[*y][x] = 1;
    }
  }
  for (std::size_t x = 0; x < total; ++x) {
    if (meets[x][x] != 0) {
      report.findings.push_back({"symmetry", pair_text(index.at(x), index.at(x)) + " is not 0"});
    }
  }

  for (const auto& s : symmetries) {
    const auto& img = image[s];
    for (int x = 0; x < in_window; ++x) {
      if (img[x] < 0) continue;
      for (int y = x + 1; y < in_window; ++y) {
        ++report.pairs_checked;
        if (img[y] < 0) continue;
        if (meets[x][y] != meets[img[x]][img[y]]) {
          report.findings.push_back(
              {"equivariance", s + ": " + pair_text(index.at(x), index.at(y)) + " = " +
                                   std::to_string(int(meets[x][y])) + " but " +
                                   pair_text(index.at(img[x]), index.at(img[y])) + " = " +
                                   std::to_string(int(meets[img[x]][img[y]]))});
        }
      }
    }
  }

  for (const auto& [name, order] : m.declared_orders()) {
    if (!m.is_symmetry(name) || !acts_on_labels(m, name) || order < 1) continue;
    auto power_fixes = [&](long long k, const CurveLabel& c) {
      CurveLabel cur = c;
      for (long long t = 0; t < k; ++t) {
        auto nxt = act(m, name, cur);
        if (!nxt) return false;
        cur = *nxt;
      }
      return cur == c;
    };
    for (const auto& c : window_labels) {
      if (!power_fixes(order, c)) {
        report.findings.push_back(
            {"order", name + "^" + std::to_string(order) + " moves " + to_string(c)});
        break;
      }
    }
    for (long long p : prime_factors(order)) {
      long long d = order / p;
      bool all_fixed = std::all_of(window_labels.begin(), window_labels.end(),
                                   [&](const CurveLabel& c) { return power_fixes(d, c); });
      if (all_fixed) {
        report.findings.push_back({"order", name + "^" + std::to_string(d) +
                                                " already fixes every label; declared order " +
                                                std::to_string(order)});
      }
    }
  }

  if (m.has_shifts() && m.n()) {
    const int n = *m.n();
    std::vector<ShiftLabel> shifts;
    for (int p = 1; p <= n; ++p) {
      for (int d : {1, 2, n - 1, n - 2}) {
        int q = static_cast<int>(reduce_mod(p + d, n));
        if (q != p) shifts.push_back({p, q});
      }
    }
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());

    for (const auto& h : shifts) {
      auto moved = [&](const ShiftAction& a, const CurveLabel& c) {
        return a.kind == ShiftAction::Kind::Fixed ? std::optional<CurveLabel>(c)
               : a.kind == ShiftAction::Kind::Moved ? std::optional<CurveLabel>(a.image)
                                                     : std::nullopt;
      };
      for (const auto& c : window_labels) {
        auto fwd = moved(m.apply_shift(h, 1, c), c);
        if (fwd) {
          if (!m.valid_label(*fwd)) {
            report.findings.push_back({"shift", to_string(h) + " sends " + to_string(c) + " to invalid " +
                                                    to_string(*fwd)});
            continue;
          }
          auto back = moved(m.apply_shift(h, -1, *fwd), *fwd);
          if (!back || *back != c) {
            report.findings.push_back({"shift", "inverse of " + to_string(h) + " does not return " +
                                                    to_string(*fwd) + " to " + to_string(c)});
          }
        }
      }
      for (int x = 0; x < in_window; ++x) {
        auto hx = moved(m.apply_shift(h, 1, index.at(x)), index.at(x));
        if (!hx) continue;
        for (int y = x + 1; y < in_window; ++y) {
          if (!meets[x][y]) continue;
          auto hy = moved(m.apply_shift(h, 1, index.at(y)), index.at(y));
          if (!hy) continue;
          if (m.intersection_number(*hx, *hy) != 1) {
            report.findings.push_back({"shift", to_string(h) + " breaks " + pair_text(index.at(x), index.at(y))});
          }
        }
      }
      for (const auto& s : m.primitive_symmetries()) {
        if (!m.has_label_action(s) || !m.end_permutation(s)) continue;
        auto [h2, sign] = m.apply_symmetry_shift(s, h);
        for (const auto& c : window_labels) {
          auto lhs = moved(m.apply_shift(h, 1, c), c);
          std::optional<CurveLabel> left = lhs ? m.try_apply_symmetry(s, *lhs) : std::nullopt;
          auto sc = m.try_apply_symmetry(s, c);
          std::optional<CurveLabel> right = sc ? moved(m.apply_shift(h2, sign, *sc), *sc) : std::nullopt;
          if (left != right) {
            report.findings.push_back({"shift", s + " does not conjugate " + to_string(h) + " to " +
                                                    (sign < 0 ? "inverse " : "") + to_string(h2) + " on " +
                                                    to_string(c)});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace mcg

#include "multistable/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "multistable/error.hpp"

namespace multistable {

namespace {

constexpr int kOrder = 16;

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  GaussLegendre() : nodes(kOrder), weights(kOrder) {
    // Newton iteration on P_n starting from the Chebyshev-like guess.
    const double pi = std::acos(-1.0);
    for (int i = 0; i < kOrder; ++i) {
      double x = std::cos(pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[kOrder - 1 - i] = x;
      weights[kOrder - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

enum class Map { identity, right_tail, left_tail };

struct Segment {
  double lo;
  double hi;
  Map map;
  double anchor;  // tail start S
  double scale;   // tail length scale L
};

struct Cell {
  double lo;
  double hi;
  int segment;
  double coarse;
  double fine;
  double err;
  double boost;  // error multiplier of a cell touching a singular end
};

class Evaluator {
 public:
  Evaluator(const std::function<double(double)>& f, std::vector<Segment> segments)
      : f_(f), segments_(std::move(segments)) {}

  double value(int seg, double u) const {
    const Segment& s = segments_[static_cast<std::size_t>(seg)];
    double y = 0.0;
    switch (s.map) {
      case Map::identity:
        y = f_(u);
        break;
      case Map::right_tail: {
        const double x = s.anchor + s.scale * (1.0 / u - 1.0);
        const double v = f_(x);
        y = v == 0.0 ? 0.0 : v * s.scale / (u * u);
        break;
      }
      case Map::left_tail: {
        const double x = s.anchor - s.scale * (1.0 / u - 1.0);
        const double v = f_(x);
        y = v == 0.0 ? 0.0 : v * s.scale / (u * u);
        break;
      }
    }
    if (!std::isfinite(y)) {
      throw NumericError("integrand is not finite at a quadrature node", u, y);
    }
    return y;
  }

  double gauss(int seg, double a, double b) const {
    const GaussLegendre& gl = rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < kOrder; ++i) {
      acc += gl.weights[i] * value(seg, mid + half * gl.nodes[i]);
    }
    return acc * half;
  }

  Cell make_cell(int seg, double a, double b, double coarse, double boost) const {
    const double m = 0.5 * (a + b);
    const double fine = gauss(seg, a, m) + gauss(seg, m, b);
    return Cell{a, b, seg, coarse, fine, boost * std::abs(fine - coarse), boost};
  }

 private:
  const std::function<double(double)>& f_;
  std::vector<Segment> segments_;
};

// For a cell [0, d] with integrand ~ x^s, halving leaves a share
// r = 2^-(s+1) of the coarse error in the fine value, so the true error of the
// fine value is r / (1 - r) times |fine - coarse|.
double singular_boost(double s) {
  if (!(s < 0.0)) return 1.0;
  const double r = std::exp2(-(s + 1.0));
  return std::max(1.0, r / (1.0 - r));
}

// Nodes in (0, 1] measured from a singular end, graded so that a cell at
// distance d has width ~ d^g / 2.
std::vector<double> graded_offsets(double g) {
  std::vector<double> d{1.0};
  double cur = 1.0;
  for (int k = 0; k < 60 && cur > 1e-6; ++k) {
    cur -= 0.5 * std::pow(cur, g);
    d.push_back(cur);
  }
  return d;  // decreasing
}

void push_uniform(std::vector<std::pair<double, double>>& out, double a, double b, int n) {
  for (int i = 0; i < n; ++i) {
    const double lo = a + (b - a) * i / n;
    const double hi = (i + 1 == n) ? b : a + (b - a) * (i + 1) / n;
    out.emplace_back(lo, hi);
  }
}

// Initial partition of [a,b]; singular ends get a graded layer.
std::vector<std::pair<double, double>> initial_cells(double a, double b, bool sing_a, bool sing_b,
                                                     int n, double g) {
  std::vector<std::pair<double, double>> out;
  if (sing_a && sing_b) {
    const double m = 0.5 * (a + b);
    auto left = initial_cells(a, m, true, false, std::max(1, n / 2), g);
    auto right = initial_cells(m, b, false, true, std::max(1, n / 2), g);
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }
  if (!sing_a && !sing_b) {
    push_uniform(out, a, b, n);
    return out;
  }
  const auto d = graded_offsets(g);
  const double len = b - a;
  if (sing_a) {
    out.emplace_back(a, a + len * d.back());
    for (std::size_t k = d.size() - 1; k > 0; --k) {
      out.emplace_back(a + len * d[k], k == 1 ? b : a + len * d[k - 1]);
    }
  } else {
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      out.emplace_back(k == 0 ? a : b - len * d[k], b - len * d[k + 1]);
    }
    out.emplace_back(b - len * d.back(), b);
  }
  return out;
}

double tail_truncation(const Tail& t, double eps) {
  if (!(t.rate > 0.0)) throw ArgumentError("exponential tail needs a positive rate");
  const double c = std::max(t.coefficient, 0.0);
  const double ratio = c / (t.rate * eps);
  return ratio > 1.0 ? std::log(ratio) / t.rate : 0.0;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (base_cells < 16) throw ArgumentError("quadrature base_cells must be >= 16");
  if (!(grading_exponent >= 1.0)) throw ArgumentError("quadrature grading_exponent must be >= 1");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ArgumentError("quadrature tolerances must be > 0");
  if (!(truncation_epsilon > 0.0)) throw ArgumentError("truncation_epsilon must be > 0");
  if (max_cells < 16) throw ArgumentError("quadrature max_cells must be >= 16");
}

const std::vector<double>& gauss_legendre_nodes() { return rule().nodes; }
const std::vector<double>& gauss_legendre_weights() { return rule().weights; }

double pairwise_sum(const double* terms, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += terms[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(terms, h) + pairwise_sum(terms + h, n - h);
}

namespace {

void check_power_tail(const Tail& t) {
  if (!(t.exponent > 1.0)) {
    throw DomainError("power tail |x|^-" + std::to_string(t.exponent) + " is not integrable (exponent must exceed 1)");
  }
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& integrand, const IntegrandInfo& info,
                           const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult result;
  if (!(info.lo < info.hi)) return result;

  double core_lo = info.lo;
  double core_hi = info.hi;
  std::vector<Segment> segments;
  // Tail segments are appended after the core ones.
  std::vector<Segment> tails;

  if (!std::isfinite(info.lo)) {
    const Tail& t = info.left;
    if (t.kind == TailKind::exponential) {
      core_lo = t.start - tail_truncation(t, spec.truncation_epsilon);
      result.truncated_mass += t.coefficient * std::exp(-t.rate * (t.start - core_lo)) / t.rate;
    } else if (t.kind == TailKind::power) {
      check_power_tail(t);
      core_lo = t.start;
      tails.push_back({0.0, 1.0, Map::left_tail, t.start, std::max(1.0, std::abs(t.start))});
    } else {
      throw ArgumentError("unbounded support on the left requires a decay tail");
    }
  }
  if (!std::isfinite(info.hi)) {
    const Tail& t = info.right;
    if (t.kind == TailKind::exponential) {
      core_hi = t.start + tail_truncation(t, spec.truncation_epsilon);
      result.truncated_mass += t.coefficient * std::exp(-t.rate * (core_hi - t.start)) / t.rate;
    } else if (t.kind == TailKind::power) {
      check_power_tail(t);
      core_hi = t.start;
      tails.push_back({0.0, 1.0, Map::right_tail, t.start, std::max(1.0, std::abs(t.start))});
    } else {
      throw ArgumentError("unbounded support on the right requires a decay tail");
    }
  }
  if (core_hi < core_lo) std::swap(core_lo, core_hi);

  std::vector<double> points{core_lo, core_hi};
  for (double b : info.breakpoints) {
    if (b > core_lo && b < core_hi) points.push_back(b);
  }
  for (const auto& s : info.singularities) {
    if (s.exponent <= -1.0) {
      throw DomainError("integrand singularity at x = " + std::to_string(s.point) +
                        " is not integrable (exponent " + std::to_string(s.exponent) + ")");
    }
    if (s.point > core_lo && s.point < core_hi) points.push_back(s.point);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  auto exponent_at = [&](double x) {
    double e = 0.0;
    for (const auto& s : info.singularities) {
      if (s.point == x) e = std::min(e, s.exponent);
    }
    return e;
  };

  struct Piece {
    int seg;
    double a;
    double b;
    double exp_a;
    double exp_b;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    segments.push_back({points[i], points[i + 1], Map::identity, 0.0, 1.0});
    pieces.push_back({static_cast<int>(segments.size() - 1), points[i], points[i + 1], exponent_at(points[i]),
                      exponent_at(points[i + 1])});
  }
  for (const auto& t : tails) {
    const Tail& tail = t.map == Map::right_tail ? info.right : info.left;
    segments.push_back(t);
    // The mapped integrand behaves like u^(p - 2) at u = 0.
    pieces.push_back({static_cast<int>(segments.size() - 1), 0.0, 1.0, std::min(0.0, tail.exponent - 2.0), 0.0});
  }

  const Evaluator eval(integrand, segments);
  const int per_piece = std::max(1, spec.base_cells / std::max<int>(1, static_cast<int>(pieces.size())));

  std::vector<Cell> cells;
  // Singular end points of each segment: (point, boost).
  std::vector<std::vector<std::pair<double, double>>> ends(segments.size());
  for (const auto& p : pieces) {
    const bool sing_a = p.exp_a < 0.0;
    const bool sing_b = p.exp_b < 0.0;
    if (sing_a) ends[static_cast<std::size_t>(p.seg)].emplace_back(p.a, singular_boost(p.exp_a));
    if (sing_b) ends[static_cast<std::size_t>(p.seg)].emplace_back(p.b, singular_boost(p.exp_b));
  }
  auto boost_of = [&](int seg, double a, double b) {
    double f = 1.0;
    for (const auto& [x, bst] : ends[static_cast<std::size_t>(seg)]) {
      if (x == a || x == b) f = std::max(f, bst);
    }
    return f;
  };
  for (const auto& p : pieces) {
    for (const auto& [a, b] : initial_cells(p.a, p.b, p.exp_a < 0.0, p.exp_b < 0.0, per_piece, spec.grading_exponent)) {
      if (a < b) cells.push_back(eval.make_cell(p.seg, a, b, eval.gauss(p.seg, a, b), boost_of(p.seg, a, b)));
    }
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    heap.emplace(cells[i].err, i);
    total += cells[i].fine;
    total_err += cells[i].err;
  }

  double checkpoint = total;
  double previous_checkpoint = total;
  std::size_t splits = 0;
  auto recompute = [&] {
    total = 0.0;
    total_err = 0.0;
    for (const auto& c : cells) {
      total += c.fine;
      total_err += c.err;
    }
  };

  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (cells.size() >= spec.max_cells) {
      recompute();
      throw NumericError("adaptive quadrature did not converge within " + std::to_string(spec.max_cells) + " cells",
                         previous_checkpoint, total);
    }
    const auto [err, idx] = heap.top();
    heap.pop();
    const Cell parent = cells[idx];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(mid > parent.lo && mid < parent.hi)) {
      // Cell cannot be split further in floating point; accept it as is.
      total_err -= parent.err;
      cells[idx].err = 0.0;
      continue;
    }
    const double left_coarse = eval.gauss(parent.segment, parent.lo, mid);
    const double right_coarse = eval.gauss(parent.segment, mid, parent.hi);
    Cell left = eval.make_cell(parent.segment, parent.lo, mid, left_coarse, boost_of(parent.segment, parent.lo, mid));
    Cell right = eval.make_cell(parent.segment, mid, parent.hi, right_coarse, boost_of(parent.segment, mid, parent.hi));
    total += left.fine + right.fine - parent.fine;
    total_err += left.err + right.err - parent.err;
    cells[idx] = left;
    cells.push_back(right);
    heap.emplace(left.err, idx);
    heap.emplace(right.err, cells.size() - 1);
    if (++splits % 1024 == 0) {
      recompute();
      previous_checkpoint = checkpoint;
      checkpoint = total;
    }
  }

  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    return x.segment != y.segment ? x.segment < y.segment : x.lo < y.lo;
  });
  std::vector<double> fine(cells.size());
  double err = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    fine[i] = cells[i].fine;
    err += cells[i].err;
  }
  result.value = pairwise_sum(fine.data(), fine.size());
  result.error = err;
  result.cells = cells.size();
  return result;
}

}  // namespace multistable

#include "quasispec/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quasispec/lyapunov.hpp"
#include "quasispec/parallel.hpp"

namespace quasispec {

double enclosing_energy_bound(const AnalyticPotential& f) {
  return 2.0 + f.max_abs_real() + 0.5;
}

namespace {

constexpr double kCutTol = 1e-13;

// Value and E-derivative of the period-q discriminant D(E) = tr of the ordered
// transfer product, kept on a shared power-of-two scale. Far outside the bands
// the pair saturates to +-inf, which the sign logic below tolerates; inside and
// near the bands the scale stays small and both values are accurate.
struct DiscJet {
  double D;
  double dD;
};

DiscJet discriminant_jet(double e, std::span<const double> v) {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;  // product
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;  // its E-derivative
  int shift = 0;
  for (const double vn : v) {
    const double a = e - vn;
    const double n00 = a * m00 - m10;
    const double n01 = a * m01 - m11;
    const double q00 = a * p00 - p10 + m00;
    const double q01 = a * p01 - p11 + m01;
    p10 = p00;
    p11 = p01;
    p00 = q00;
    p01 = q01;
    m10 = m00;
    m11 = m01;
    m00 = n00;
    m01 = n01;
    const double mx = std::max(std::max(std::abs(m00), std::abs(m01)),
                               std::max(std::abs(m10), std::abs(m11)));
    if (mx > 256.0) {
      const int k = std::ilogb(mx);
      m00 = std::ldexp(m00, -k);
      m01 = std::ldexp(m01, -k);
      m10 = std::ldexp(m10, -k);
      m11 = std::ldexp(m11, -k);
      p00 = std::ldexp(p00, -k);
      p01 = std::ldexp(p01, -k);
      p10 = std::ldexp(p10, -k);
      p11 = std::ldexp(p11, -k);
      shift += k;
    }
  }
  return {std::ldexp(m00 + m11, shift), std::ldexp(p00 + p11, shift)};
}

template <class F>
double bisect(F&& h, double lo, double hi, double flo) {
  for (int it = 0; it < 100 && hi - lo > kCutTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    if (fm == 0) return mid;
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// {E : |D(E)| <= thr} for one phase, complete by construction. D is
// real-rooted (it traverses the strip [-2, 2] exactly q times and every
// critical value satisfies |D| >= 2, so its q zeros are simple): (1) a sign
// scan collects the zeros, refining the grid until all q appear; (2) by
// Rolle, exactly one critical point lies between consecutive zeros and none
// outside their hull, each bracketed for a bisection of D'; (3) each level
// +-thr is crossed at most once per monotone piece, and the crossings cut
// [-R, R] into intervals that a midpoint probe classifies. A level excursion
// between two scan nodes can therefore never go unseen, which a direct scan
// for D = +-thr sign changes does not guarantee.
BandSet bands_below_threshold(std::span<const double> v, double R, std::int64_t q,
                              double thr) {
  auto D = [&](double e) { return discriminant_jet(e, v).D; };

  std::vector<double> zeros;
  for (std::int64_t cells = 64 * q;; cells *= 8) {
    zeros.clear();
    double x0 = -R;
    double f0 = D(x0);
    for (std::int64_t i = 1; i <= cells; ++i) {
      const double x1 = -R + 2.0 * R * static_cast<double>(i) / static_cast<double>(cells);
      const double f1 = D(x1);
      if (f0 == 0)
        zeros.push_back(x0);
      else if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0))
        zeros.push_back(bisect(D, x0, x1, f0));
      x0 = x1;
      f0 = f1;
    }
    if (f0 == 0) zeros.push_back(x0);
    if (static_cast<std::int64_t>(zeros.size()) == q) break;
    if (cells >= 4096 * q)
      throw std::runtime_error("sigma: could not isolate the discriminant zeros");
  }

  std::vector<double> marks;  // critical points, ascending
  marks.reserve(zeros.size());
  auto dD = [&](double e) { return discriminant_jet(e, v).dD; };
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i)
    marks.push_back(bisect(dD, zeros[i], zeros[i + 1], dD(zeros[i])));

  std::vector<double> cuts;
  cuts.push_back(-R);
  double a = -R;
  double Da = D(a);
  for (std::size_t piece = 0; piece <= marks.size(); ++piece) {
    const double b = piece < marks.size() ? marks[piece] : R;
    const double Db = D(b);
    for (const double level : {thr, -thr}) {
      const double ha = Da - level;
      const double hb = Db - level;
      if (ha == 0)
        cuts.push_back(a);
      else if (hb == 0)
        cuts.push_back(b);
      else if ((ha < 0) != (hb < 0))
        cuts.push_back(bisect([&](double e) { return D(e) - level; }, a, b, ha));
    }
    a = b;
    Da = Db;
  }
  cuts.push_back(R);
  std::sort(cuts.begin(), cuts.end());

  std::vector<Interval> in;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < kCutTol) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (std::abs(D(mid)) <= thr) in.push_back({cuts[i], cuts[i + 1]});
  }
  BandSet out{std::move(in)};
  if (!out.empty() && (out.min() <= -R + kCutTol || out.max() >= R - kCutTol))
    throw std::runtime_error("sigma: band reaches the enclosing energy bound");
  if (static_cast<std::int64_t>(out.size()) > q)
    throw std::runtime_error("sigma: more bands than the period allows");
  return out;
}

}  // namespace

BandSet sigma(const AnalyticPotential& f, const Rational& pq, double theta) {
  const auto q = pq.q;
  const auto v = potential_sequence(f, Frequency(pq), theta, static_cast<int>(q));
  return bands_below_threshold(v, enclosing_energy_bound(f), q, 2.0);
}

BandSet bloch_oracle(const AnalyticPotential& f, const Rational& pq, double theta,
                     std::size_t k_grid_size) {
  if (k_grid_size < 4 || k_grid_size % 2 != 0)
    throw std::invalid_argument("bloch_oracle: k_grid_size must be even and >= 4");
  const auto q = static_cast<std::size_t>(pq.q);
  const auto v = potential_sequence(f, Frequency(pq), theta, static_cast<int>(q));

  // Spectra at twist kappa and -kappa coincide (complex conjugation), so the
  // distinct nodes of the full circle grid are kappa_j = 2 pi j / N, j <= N/2;
  // j = 0 and N/2 hit the exact band edges.
  const std::size_t nodes = k_grid_size / 2 + 1;
  std::vector<double> lo(q, std::numeric_limits<double>::infinity());
  std::vector<double> hi(q, -std::numeric_limits<double>::infinity());
  std::vector<Eigen::VectorXd> evs(nodes);

  parallel_for(nodes, [&](std::size_t j) {
    const double kappa =
        two_pi * static_cast<double>(j) / static_cast<double>(k_grid_size);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(q),
                                                static_cast<Eigen::Index>(q));
    for (std::size_t r = 0; r < q; ++r) H(static_cast<Eigen::Index>(r),
                                          static_cast<Eigen::Index>(r)) = v[r];
    for (std::size_t r = 0; r + 1 < q; ++r) {
      H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + 1)) += 1.0;
      H(static_cast<Eigen::Index>(r + 1), static_cast<Eigen::Index>(r)) += 1.0;
    }
    const std::complex<double> w{std::cos(kappa), std::sin(kappa)};
    H(0, static_cast<Eigen::Index>(q - 1)) += std::conj(w);
    H(static_cast<Eigen::Index>(q - 1), 0) += w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    evs[j] = es.eigenvalues();
  });

  for (std::size_t j = 0; j < nodes; ++j)
    for (std::size_t i = 0; i < q; ++i) {
      const double x = evs[j](static_cast<Eigen::Index>(i));
      lo[i] = std::min(lo[i], x);
      hi[i] = std::max(hi[i], x);
    }

  std::vector<Interval> bands;
  bands.reserve(q);
  for (std::size_t i = 0; i < q; ++i) bands.push_back({lo[i], hi[i]});
  return BandSet(std::move(bands));
}

namespace {

SMinusResult s_minus_impl(const AnalyticPotential& f, const Rational& pq, double eps,
                          int theta_count) {
  if (theta_count < 16) throw std::invalid_argument("s_minus: theta_count must be >= 16");
  if (eps < 0) throw std::invalid_argument("s_minus_eps: eps must be >= 0");
  const auto q = pq.q;
  const double period = two_pi / static_cast<double>(q);
  const double R = enclosing_energy_bound(f);

  // {E : dist(E, sigma(theta)) <= eps} is sigma(theta) fattened by eps in E,
  // not the |D| <= 2 + eps sublevel set: at steep band edges the two differ
  // by the factor |dD/dE|.
  std::vector<BandSet> slots(static_cast<std::size_t>(theta_count));
  parallel_for(slots.size(), [&](std::size_t j) {
    const double theta = period * static_cast<double>(j) / static_cast<double>(theta_count);
    const auto v = potential_sequence(f, Frequency(pq), theta, static_cast<int>(q));
    slots[j] = bands_below_threshold(v, R, q, 2.0).fatten(eps);
  });

  BandSet acc = slots[0];
  for (std::size_t j = 1; j < slots.size() && !acc.empty(); ++j)
    acc = acc.intersect(slots[j]);
  return {std::move(acc), theta_count, period / theta_count};
}

}  // namespace

SMinusResult s_minus(const AnalyticPotential& f, const Rational& pq, int theta_count) {
  return s_minus_impl(f, pq, 0.0, theta_count);
}

SMinusResult s_minus_eps(const AnalyticPotential& f, const Rational& pq, double eps,
                         int theta_count) {
  return s_minus_impl(f, pq, eps, theta_count);
}

namespace {

// G(phi) = sum_{|k| <= d} c_k e^{ik phi}: the on-lattice part of D_q as a trig
// poly in phi = q theta, with c_k symmetrized to kill FFT noise.
struct PhiPoly {
  std::vector<std::complex<double>> c;  // c[k], k = 0..d
  double scale = 1;

  double operator()(double phi) const {
    const std::complex<double> w{std::cos(phi), std::sin(phi)};
    std::complex<double> wk = 1;
    double acc = c[0].real();
    for (std::size_t k = 1; k < c.size(); ++k) {
      wk *= w;
      acc += 2.0 * (c[k] * wk).real();
    }
    return acc;
  }
};

}  // namespace

UpsilonResult upsilon_measure(double E, const AnalyticPotential& f, const Rational& pq) {
  const int q = static_cast<int>(pq.q);
  const auto s = sample_discriminant(E, f, pq, q);
  const int d = f.truncation_degree(std::max(std::abs(E), 1.0), std::exp(-1.0));

  PhiPoly g;
  g.c.resize(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k)
    g.c[static_cast<std::size_t>(k)] =
        0.5 * (s.coeff(k * q) + std::conj(s.coeff(-k * q)));
  for (const auto& ck : g.c) g.scale = std::max(g.scale, std::abs(ck));

  // Crossings of G = +-2 on the phi circle: scan + bisection. Root finding on
  // the circle is the unit-|w| slice of the degree-2d polynomial problem, and
  // it is immune to a tiny top coefficient c_d (critical/subcritical cases).
  const std::size_t grid = std::max<std::size_t>(4096, 512 * static_cast<std::size_t>(d));
  std::vector<double> roots;
  bool degenerate = false;
  for (const double level : {2.0, -2.0}) {
    auto h = [&](double phi) { return g(phi) - level; };
    double x0 = 0, h0 = h(0);
    for (std::size_t j = 1; j <= grid; ++j) {
      const double x1 = two_pi * static_cast<double>(j) / static_cast<double>(grid);
      const double h1 = h(x1);
      if (h0 == 0) {
        roots.push_back(x0);
        // An exact node hit carries no bracketing sign change; if the
        // neighborhood has one sign, the level is touched, not crossed.
        const double dlt = 0.25 * (x1 - x0);
        if (h(x0 - dlt) * h(x0 + dlt) > 0) degenerate = true;
      }
      if ((h0 < 0 && h1 > 0) || (h0 > 0 && h1 < 0)) {
        double lo = x0, hi = x1, flo = h0;
        for (int it = 0; it < 64 && (hi - lo) > 1e-13; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = h(mid);
          if (fm == 0) {
            lo = hi = mid;
            break;
          }
          if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      x0 = x1;
      h0 = h1;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return b - a < 1e-11; }),
              roots.end());

  // Crossing pairs closer than the noise resolution of the symmetrized
  // coefficients are indistinguishable from a tangency.
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    if (roots[i + 1] - roots[i] < 1e-7) degenerate = true;
  if (roots.size() >= 2 && roots.front() + two_pi - roots.back() < 1e-7) degenerate = true;

  // Tangencies leave no crossing but graze the levels: flag nodes that sit on
  // a level yet far from every found root.
  const double step = two_pi / static_cast<double>(grid);
  for (std::size_t j = 0; j < grid && !degenerate; ++j) {
    const double phi = step * static_cast<double>(j);
    const double gv = g(phi);
    if (std::min(std::abs(gv - 2.0), std::abs(gv + 2.0)) < 1e-10 * g.scale) {
      bool near = false;
      for (const double r : roots) near = near || std::abs(r - phi) < 2 * step;
      if (!near) degenerate = true;
    }
  }

  UpsilonResult out;
  out.boundary_roots = static_cast<int>(roots.size());
  out.boundary_degenerate = degenerate;
  if (roots.empty()) {
    out.measure = std::abs(g(0.0)) <= 2.0 ? two_pi : 0.0;
    return out;
  }
  double measure = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double a = roots[i];
    const double b = i + 1 < roots.size() ? roots[i + 1] : roots[0] + two_pi;
    const double mid = 0.5 * (a + b);
    if (std::abs(g(mid)) <= 2.0) measure += b - a;
  }
  out.measure = measure;
  return out;
}

Theorem3Report theorem3_probe(const AnalyticPotential& f, std::span<const Rational> cv,
                              std::span<const double> E_grid, double eps, int theta_count) {
  if (!f.declared_degree())
    throw std::invalid_argument("theorem3_probe: f must be a trig polynomial");
  if (cv.size() < 3)
    throw std::invalid_argument("theorem3_probe: need at least 3 convergents");
  if (E_grid.empty()) throw std::invalid_argument("theorem3_probe: empty energy grid");

  Theorem3Report rep;
  rep.d = *f.declared_degree();
  rep.eps = eps;
  rep.qs.assign(cv.begin(), cv.end());
  rep.rows.resize(E_grid.size());
  const Rational deep = cv.back();

  parallel_for(E_grid.size(), [&](std::size_t i) {
    Theorem3Row row;
    row.E = E_grid[i];
    row.gamma_bar = bar_gamma_rational(row.E, f, deep, theta_count);
    row.measures.reserve(cv.size());
    for (const auto& pq : cv) row.measures.push_back(upsilon_measure(row.E, f, pq).measure);
    row.bound_slope = -(row.gamma_bar - eps) / (2.0 * rep.d);
    row.in_scope = row.gamma_bar > eps;

    // LS fit of ln Upsilon against q over the strictly positive entries.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npos = 0;
    for (std::size_t k = 0; k < cv.size(); ++k) {
      if (row.measures[k] <= 0) continue;
      const double x = static_cast<double>(cv[k].q);
      const double y = std::log(row.measures[k]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++npos;
    }
    row.positive_points = npos;
    if (npos >= 2 && sxx * npos - sx * sx > 0) {
      row.fitted_slope = (sxy * npos - sx * sy) / (sxx * npos - sx * sx);
    } else {
      // everything at or below the floor: decay already complete
      row.fitted_slope = -std::numeric_limits<double>::infinity();
    }
    row.decay_ok = !row.in_scope || row.fitted_slope <= row.bound_slope;
    rep.rows[i] = std::move(row);
  });

  rep.fubini_integral.assign(cv.size(), 0.0);
  for (std::size_t k = 0; k < cv.size(); ++k) {
    double acc = 0;
    for (std::size_t i = 0; i < E_grid.size(); ++i) {
      // trapezoid weights on the supplied grid
      double w = 0;
      if (i > 0) w += 0.5 * (E_grid[i] - E_grid[i - 1]);
      if (i + 1 < E_grid.size()) w += 0.5 * (E_grid[i + 1] - E_grid[i]);
      acc += rep.rows[i].measures[k] * w;
    }
    rep.fubini_integral[k] = acc;
  }
  return rep;
}

}  // namespace quasispec

#include "ntos/rootfind.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>

namespace ntos {

namespace {

using MC = boost::multiprecision::cpp_complex_50;
using MF = MC::value_type;

struct DEval {
  MF f;      // Re of the cross-multiplied consistency function
  MF scale;  // largest single term, for scale-free residuals
};

DEval eval_d(const ChainParams& p, int N, const MF& E) {
  const MF t1 = p.t1, t2 = p.t2, g = p.gamma, lL = p.lambda_L, lR = p.lambda_R;
  const MF a = t2 * (t1 + g);
  const MF b = t1 * t1 - g * g + t2 * t2 - E * E;
  const MF c = t2 * (t1 - g);
  const MC disc = sqrt(MC(b * b - 4 * a * c));
  const MC q = (b.sign() * disc.real() >= 0) ? MC(-(MC(b) + disc) / 2)
                                             : MC(-(MC(b) - disc) / 2);
  MC b1 = q / a;
  MC b2 = MC(c) / q;
  if (abs(b1) > abs(b2)) std::swap(b1, b2);

  const MC P1 = t2 + b1 * (t1 + g);
  const MC P2 = t2 + b2 * (t1 + g);
  const MC b1N = pow(b1, N);
  const MC b2N = pow(b2, N);
  const MC n1 = b1 * (P1 * lL - E * b1N * (t1 + g));
  const MC d1 = b2 * (P2 * lL - E * b2N * (t1 + g));
  const MC n2 = E * t2 * b1 - b1N * P1 * lR;
  const MC d2 = E * t2 * b2 - b2N * P2 * lR;

  const MC u = n1 * d2;
  const MC v = n2 * d1;
  DEval out;
  out.f = (u - v).real();
  out.scale = std::max(abs(u), abs(v));
  return out;
}

struct Bracket {
  MF lo, hi;
  MF flo;
};

std::optional<Bracket> scan(const ChainParams& p, int N, int sign, double ln_center,
                            double ln_halfwidth, int samples) {
  MF prev_e = 0;
  MF prev_f = 0;
  bool have_prev = false;
  // Scan from small |E| upward so the root nearest zero is found first.
  for (int i = 0; i <= samples; ++i) {
    const double w = -ln_halfwidth + 2.0 * ln_halfwidth * i / samples;
    const MF E = sign * exp(MF(ln_center + w));
    const DEval d = eval_d(p, N, E);
    if (have_prev && d.f * prev_f < 0) {
      return Bracket{prev_e, E, prev_f};
    }
    prev_e = E;
    prev_f = d.f;
    have_prev = true;
  }
  return std::nullopt;
}

}  // namespace

double consistency_residual_mp(const ChainParams& p, int N, double ln_abs_e, int sign) {
  const MF E = sign * exp(MF(ln_abs_e));
  const DEval d = eval_d(p, N, E);
  return static_cast<double>(abs(d.f) / d.scale);
}

EminRoot emin_root(const ChainParams& p, int N, double ln_center, double ln_halfwidth) {
  p.validate();
  if (N < 2) throw std::invalid_argument("emin_root: N < 2");
  if (std::abs(p.lambda_L) < 1e-300 && std::abs(p.lambda_R) < 1e-300) {
    // Unperturbed broken cell: the zero mode is exact.
    return EminRoot{0.0, -std::numeric_limits<double>::infinity(), +1, 0.0};
  }

  const int samples = std::max(60, static_cast<int>(40 * ln_halfwidth));
  std::optional<EminRoot> best;
  for (int sign : {+1, -1}) {
    auto br = scan(p, N, sign, ln_center, ln_halfwidth, samples);
    if (!br) continue;
    MF lo = br->lo, hi = br->hi, flo = br->flo;
    for (int it = 0; it < 400; ++it) {
      const MF mid = (lo + hi) / 2;
      const DEval d = eval_d(p, N, mid);
      if (d.f * flo < 0) {
        hi = mid;
      } else {
        lo = mid;
        flo = d.f;
      }
      if (abs(hi - lo) < abs(mid) * MF("1e-40")) break;
    }
    const MF root = (lo + hi) / 2;
    const DEval d = eval_d(p, N, root);
    EminRoot r;
    r.sign = sign;
    r.ln_abs = static_cast<double>(log(abs(root)));
    r.value = static_cast<double>(root);
    r.residual = static_cast<double>(abs(d.f) / d.scale);
    if (!best || r.ln_abs < best->ln_abs) best = r;
  }
  if (!best) {
    throw no_root_error("emin_root: no sign change in bracket around ln|E| = " +
                        std::to_string(ln_center));
  }
  return *best;
}

}  // namespace ntos

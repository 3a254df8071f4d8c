#pragma once

// Iterative Colebrook solvers. Every solver returns a full IterationTrace.
//
// Stopping: a step stops the iteration when |step| <= tolerance or when the
// step is below 4 ulp of the new iterate. With `verify` set, the stopping step
// is kept as a control step and is not counted, which is how printed
// convergence tables usually present a run.

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colebrook/core.hpp"
#include "colebrook/starting_points.hpp"

namespace colebrook {

enum class Method {
  FixedPoint,
  NewtonLambda,
  NewtonX,
  HalleyX,
  SchroderX,
  Householder3X,
  SecantLambda,
  SecantX,
  ThreePointX,
};

inline constexpr Method kAllMethods[] = {
    Method::FixedPoint, Method::NewtonLambda,  Method::NewtonX,
    Method::HalleyX,    Method::SchroderX,     Method::Householder3X,
    Method::SecantLambda, Method::SecantX,     Method::ThreePointX,
};

enum class Space { Lambda, X };
enum class StopOn { Working, Lambda };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
Space method_space(Method m);

template <std::floating_point T = double>
struct SolverConfig {
  Method method = Method::NewtonX;
  StartStrategy start = StartStrategy::traditional();
  // Older of the two secant starts.
  StartStrategy secant_prior = StartStrategy::fixed_newton();
  T tolerance = T(1e-8);
  int max_iterations = 100;
  bool strict_domain = false;
  StopOn stop_on = StopOn::Working;
  bool verify = false;
  // When set, a step also stops the iteration if the old and new iterates
  // print identically with this many decimals (table replay).
  std::optional<int> stop_decimals;
};

template <std::floating_point T = double>
struct ControlStep {
  T residual{};
  std::vector<T> aux;
  T iterate{};
};

template <std::floating_point T = double>
struct IterationTrace {
  Method method = Method::NewtonX;
  Space variable = Space::X;
  // iterates[0] is the start; residuals[i] and aux[i] are evaluated at iterates[i].
  std::vector<T> iterates;
  std::vector<T> residuals;
  std::vector<std::vector<T>> aux;
  std::vector<std::string> aux_names;
  std::optional<T> prior;  // secant only: the older start
  std::optional<ControlStep<T>> control;
  bool converged = false;
  int iterations = 0;
  FrictionFactor<T> final_lambda{std::numeric_limits<T>::quiet_NaN()};
  TransmissionFactor<T> final_x{std::numeric_limits<T>::quiet_NaN()};
  T final_residual = std::numeric_limits<T>::quiet_NaN();
};

namespace detail {

template <std::floating_point T>
struct Step {
  T residual;
  std::vector<T> aux;
  T next;
};

template <std::floating_point T>
T to_lambda(T v, Space s) {
  return s == Space::Lambda ? v : T(1) / (v * v);
}

template <std::floating_point T>
bool same_printed(T a, T b, int digits, char style) {
  const auto fa = style == 'f' ? fmt::format("{:.{}f}", static_cast<double>(a), digits)
                               : fmt::format("{:.{}g}", static_cast<double>(a), digits);
  const auto fb = style == 'f' ? fmt::format("{:.{}f}", static_cast<double>(b), digits)
                               : fmt::format("{:.{}g}", static_cast<double>(b), digits);
  return fa == fb;
}

template <std::floating_point T>
bool step_small(T prev, T next, Space s, const SolverConfig<T>& cfg) {
  using std::abs;
  T d = abs(next - prev);
  T scale = abs(next);
  if (cfg.stop_on == StopOn::Lambda && s == Space::X) {
    d = abs(to_lambda(next, s) - to_lambda(prev, s));
    scale = abs(to_lambda(next, s));
  }
  if (d <= cfg.tolerance || d <= T(4) * std::numeric_limits<T>::epsilon() * scale) return true;
  return cfg.stop_decimals && same_printed(prev, next, *cfg.stop_decimals, 'f');
}

template <std::floating_point T>
void finalize(IterationTrace<T>& tr, const FlowConditions<T>& fc) {
  using std::abs;
  tr.iterations = static_cast<int>(tr.iterates.size()) - 1;
  const T last = tr.control ? tr.control->iterate : tr.iterates.back();
  if (!std::isfinite(last) || !(last > T(0))) {
    tr.converged = false;
    return;
  }
  if (tr.variable == Space::Lambda) {
    tr.final_lambda = {last};
    tr.final_x = x_from_lambda(tr.final_lambda);
  } else {
    tr.final_x = {last};
    tr.final_lambda = lambda_from_x(tr.final_x);
  }
  try {
    tr.final_residual = residual_x(tr.final_x.value, fc);
  } catch (const DomainError&) {
    tr.converged = false;
    return;
  }
  if (tr.converged && !(abs(tr.final_residual) <= T(1e-6))) tr.converged = false;
}

// Runs `step(current)` until the stopping rule fires or the cap is hit.
template <std::floating_point T, class StepFn>
IterationTrace<T> drive(const FlowConditions<T>& fc, const SolverConfig<T>& cfg, Method m, Space s,
                        T start, std::vector<std::string> aux_names, StepFn&& step) {
  if (cfg.strict_domain && !fc.in_domain())
    throw DomainError("flow conditions outside 4000 <= Re <= 1e8, 0 <= rr <= 0.05");
  if (!(cfg.tolerance >= T(0))) throw UsageError("tolerance must be non-negative");
  if (cfg.max_iterations < 1) throw UsageError("max_iterations must be at least 1");

  IterationTrace<T> tr;
  tr.method = m;
  tr.variable = s;
  tr.aux_names = std::move(aux_names);
  tr.iterates.push_back(start);

  const int budget = cfg.max_iterations + (cfg.verify ? 1 : 0);
  for (int k = 0; k < budget; ++k) {
    const T cur = tr.iterates.back();
    Step<T> st;
    try {
      st = step(cur);
    } catch (const DomainError&) {
      break;
    }
    if (!std::isfinite(st.next)) break;
    const bool small = step_small(cur, st.next, s, cfg);
    if (small && cfg.verify) {
      tr.control = ControlStep<T>{st.residual, std::move(st.aux), st.next};
      tr.converged = true;
      break;
    }
    if (k == cfg.max_iterations) break;
    tr.residuals.push_back(st.residual);
    tr.aux.push_back(std::move(st.aux));
    tr.iterates.push_back(st.next);
    if (small) {
      tr.converged = true;
      break;
    }
  }
  finalize(tr, fc);
  return tr;
}

template <std::floating_point T>
T start_in(Space s, const StartStrategy& st, const FlowConditions<T>& fc) {
  const TransmissionFactor<T> x = start_x(st, fc);
  return s == Space::X ? x.value : lambda_from_x(x).value;
}

template <std::floating_point T>
void require_nonzero(T v, const char* what) {
  if (v == T(0) || !std::isfinite(v)) throw SingularStepError(what);
}

}  // namespace detail

template <std::floating_point T>
IterationTrace<T> solve_fixed_point(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(fc, cfg, Method::FixedPoint, Space::X,
                       detail::start_in(Space::X, cfg.start, fc), {}, [&](T x) {
                         const T f = residual_x(x, fc);
                         return detail::Step<T>{f, {}, x - f};
                       });
}

template <std::floating_point T>
IterationTrace<T> solve_newton_lambda(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(fc, cfg, Method::NewtonLambda, Space::Lambda,
                       detail::start_in(Space::Lambda, cfg.start, fc), {"f'"}, [&](T lam) {
                         const T f = residual_lambda(lam, fc);
                         const T d = residual_lambda_prime(lam, fc);
                         detail::require_nonzero(d, "f'(lambda) vanished");
                         return detail::Step<T>{f, {d}, lam - f / d};
                       });
}

template <std::floating_point T>
IterationTrace<T> solve_newton_x(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(fc, cfg, Method::NewtonX, Space::X,
                       detail::start_in(Space::X, cfg.start, fc), {"f'"}, [&](T x) {
                         const T f = residual_x(x, fc);
                         const T d = residual_x_prime(x, fc);
                         return detail::Step<T>{f, {d}, x - f / d};
                       });
}

template <std::floating_point T>
IterationTrace<T> solve_halley_x(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(fc, cfg, Method::HalleyX, Space::X,
                       detail::start_in(Space::X, cfg.start, fc), {"f'", "f''"}, [&](T x) {
                         const T f = residual_x(x, fc);
                         const T d1 = residual_x_prime(x, fc);
                         const T d2 = residual_x_second(x, fc);
                         const T den = T(2) * d1 * d1 - f * d2;
                         detail::require_nonzero(den, "Halley denominator vanished");
                         return detail::Step<T>{f, {d1, d2}, x - T(2) * f * d1 / den};
                       });
}

template <std::floating_point T>
IterationTrace<T> solve_schroder_x(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(fc, cfg, Method::SchroderX, Space::X,
                       detail::start_in(Space::X, cfg.start, fc), {"f'", "f''"}, [&](T x) {
                         const T f = residual_x(x, fc);
                         const T d1 = residual_x_prime(x, fc);
                         const T d2 = residual_x_second(x, fc);
                         detail::require_nonzero(d1, "f'(x) vanished");
                         const T next = x - f / d1 - d2 * f * f / (T(2) * d1 * d1 * d1);
                         return detail::Step<T>{f, {d1, d2}, next};
                       });
}

template <std::floating_point T>
IterationTrace<T> solve_householder3_x(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(
      fc, cfg, Method::Householder3X, Space::X, detail::start_in(Space::X, cfg.start, fc),
      {"f'", "f''", "f'''"}, [&](T x) {
        const T f = residual_x(x, fc);
        const T d1 = residual_x_prime(x, fc);
        const T d2 = residual_x_second(x, fc);
        const T d3 = residual_x_third(x, fc);
        const T num = T(6) * f * d1 * d1 - T(3) * f * f * d2;
        const T den = T(6) * d1 * d1 * d1 - T(6) * f * d1 * d2 + f * f * d3;
        detail::require_nonzero(den, "Householder denominator vanished");
        return detail::Step<T>{f, {d1, d2, d3}, x - num / den};
      });
}

// Older start from cfg.secant_prior, newer start from cfg.start.
template <std::floating_point T>
IterationTrace<T> solve_secant(const FlowConditions<T>& fc, const SolverConfig<T>& cfg, Space space) {
  auto f = [&](T v) { return space == Space::X ? residual_x(v, fc) : residual_lambda(v, fc); };
  T prev = detail::start_in(space, cfg.secant_prior, fc);
  T f_prev = f(prev);
  const T first = detail::start_in(space, cfg.start, fc);
  auto tr = detail::drive(fc, cfg, space == Space::X ? Method::SecantX : Method::SecantLambda, space,
                          first, {"f(prev)", "slope"}, [&](T cur) {
                            const T f_cur = f(cur);
                            if (f_cur == T(0)) {
                              const T slope = prev != cur ? (f_prev - f_cur) / (prev - cur) : T(0);
                              return detail::Step<T>{f_cur, {f_prev, slope}, cur};
                            }
                            detail::require_nonzero(prev - cur, "secant points coincide");
                            const T slope = (f_prev - f_cur) / (prev - cur);
                            detail::require_nonzero(slope, "secant slope vanished");
                            detail::Step<T> st{f_cur, {f_prev, slope}, cur - f_cur / slope};
                            prev = cur;
                            f_prev = f_cur;
                            return st;
                          });
  tr.prior = detail::start_in(space, cfg.secant_prior, fc);
  return tr;
}

// Three-point eighth-order scheme. aux = {f'(x), y, f(y), z, f(z)}.
template <std::floating_point T>
IterationTrace<T> solve_threepoint_x(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  return detail::drive(
      fc, cfg, Method::ThreePointX, Space::X, detail::start_in(Space::X, cfg.start, fc),
      {"f'", "y", "f(y)", "z", "f(z)"}, [&](T x) {
        using std::abs;
        const T fx = residual_x(x, fc);
        const T d = residual_x_prime(x, fc);
        // At the noise floor of f every ratio below is rounding noise.
        if (fx == T(0) || abs(fx) <= T(8) * std::numeric_limits<T>::epsilon() * abs(x))
          return detail::Step<T>{fx, {d, x, fx, x, fx}, x};
        const T y = x - fx / d;
        const T fy = residual_x(y, fc);
        if (fy == T(0)) return detail::Step<T>{fx, {d, y, fy, y, fy}, y};
        const T den_z = fx - T(2) * fy;
        detail::require_nonzero(den_z, "three-point corrector denominator vanished");
        const T z = y - fx / den_z * fy / d;
        const T fz = residual_x(z, fc);
        if (fz == T(0)) return detail::Step<T>{fx, {d, y, fy, z, fz}, z};
        const T r = fy / fx;
        const T w = d * (T(1) - T(2) * r - r * r) * (T(1) - fz / fy) * (T(1) - T(2) * fz / fx);
        detail::require_nonzero(w, "three-point final denominator vanished");
        return detail::Step<T>{fx, {d, y, fy, z, fz}, z - fz / w};
      });
}

template <std::floating_point T>
IterationTrace<T> solve(const FlowConditions<T>& fc, const SolverConfig<T>& cfg) {
  switch (cfg.method) {
    case Method::FixedPoint: return solve_fixed_point(fc, cfg);
    case Method::NewtonLambda: return solve_newton_lambda(fc, cfg);
    case Method::NewtonX: return solve_newton_x(fc, cfg);
    case Method::HalleyX: return solve_halley_x(fc, cfg);
    case Method::SchroderX: return solve_schroder_x(fc, cfg);
    case Method::Householder3X: return solve_householder3_x(fc, cfg);
    case Method::SecantLambda: return solve_secant(fc, cfg, Space::Lambda);
    case Method::SecantX: return solve_secant(fc, cfg, Space::X);
    case Method::ThreePointX: return solve_threepoint_x(fc, cfg);
  }
  throw UsageError("unknown method");
}

// High-accuracy oracle: Newton in x from the traditional start.
template <std::floating_point T>
FrictionFactor<T> solve_reference(const FlowConditions<T>& fc) {
  using std::abs;
  SolverConfig<T> cfg;
  cfg.method = Method::NewtonX;
  cfg.start = StartStrategy::traditional();
  cfg.tolerance = T(1e-15);
  cfg.max_iterations = 200;
  const IterationTrace<T> tr = solve_newton_x(fc, cfg);
  if (!tr.converged || !(abs(tr.final_residual) <= T(1e-13)))
    throw OracleError(fmt::format("reference solve failed at Re={}, rr={}",
                                  static_cast<double>(fc.re), static_cast<double>(fc.rr)));
  return tr.final_lambda;
}

}  // namespace colebrook

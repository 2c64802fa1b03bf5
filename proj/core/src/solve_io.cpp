#include "mbh/solve_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mbh/errors.hpp"
#include "mbh/experiments.hpp"

namespace mbh {

namespace {

struct LineReader {
  std::istream& in;
  int line = 0;

  // Next non-blank, non-comment line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string s;
    while (std::getline(in, s)) {
      ++line;
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos || s[first] == '#') continue;
      tokens.clear();
      std::istringstream ss(s);
      for (std::string t; ss >> t;) tokens.push_back(t);
      return true;
    }
    return false;
  }
};

double to_real(const std::string& t, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'", line);
  }
  if (pos != t.size()) throw ParseError("not a number: '" + t + "'", line);
  return v;
}

long long to_int(const std::string& t, int line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + t + "'", line);
  }
  if (pos != t.size()) throw ParseError("not an integer: '" + t + "'", line);
  return v;
}

Side side_token(const std::string& t, int line) {
  try {
    return parse_side(t);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line);
  }
}

void require_positive(double v, const char* what, int line) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(std::string(what) + " must be positive and finite", line);
}

}  // namespace

DiskProblem read_boundary_data(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError("empty input, expected 'side lambda radius N'", r.line);
  if (tok.size() != 4) throw ParseError("header must be 'side lambda radius N'", r.line);
  DiskProblem p;
  p.side = side_token(tok[0], r.line);
  p.lambda = to_real(tok[1], r.line);
  p.radius = to_real(tok[2], r.line);
  const long long n = to_int(tok[3], r.line);
  require_positive(p.lambda, "lambda", r.line);
  require_positive(p.radius, "radius", r.line);
  if (n < 1 || n > 1000000) throw ParseError("N must be in [1, 1000000]", r.line);
  p.n_modes = static_cast<int>(n);
  const std::size_t m = 2 * static_cast<std::size_t>(n) + 2;

  while (r.next(tok)) {
    std::complex<double> f, g;
    if (tok.size() == 2) {
      f = to_real(tok[0], r.line);
      g = to_real(tok[1], r.line);
    } else if (tok.size() == 4) {
      f = {to_real(tok[0], r.line), to_real(tok[1], r.line)};
      g = {to_real(tok[2], r.line), to_real(tok[3], r.line)};
    } else {
      throw ParseError("sample line must hold 'f g' or 'f_re f_im g_re g_im'", r.line);
    }
    if (!std::isfinite(std::abs(f)) || !std::isfinite(std::abs(g))) throw ParseError("non-finite sample", r.line);
    if (p.boundary_u.size() == m) {
      throw ParseError("more than M = 2N+2 = " + std::to_string(m) + " samples", r.line);
    }
    p.boundary_u.push_back(f);
    p.boundary_un.push_back(g);
  }
  if (p.boundary_u.size() != m) {
    throw ParseError("got " + std::to_string(p.boundary_u.size()) + " samples, expected M = 2N+2 = " +
                         std::to_string(m),
                     r.line);
  }
  return p;
}

void write_boundary_data(std::ostream& out, const DiskProblem& p) {
  out << to_string(p.side) << ' ' << format_real(p.lambda) << ' ' << format_real(p.radius) << ' ' << p.n_modes
      << '\n';
  for (std::size_t j = 0; j < p.boundary_u.size(); ++j) {
    const auto f = p.boundary_u[j], g = p.boundary_un[j];
    if (f.imag() == 0.0 && g.imag() == 0.0) {
      out << format_real(f.real()) << ' ' << format_real(g.real()) << '\n';
    } else {
      out << format_real(f.real()) << ' ' << format_real(f.imag()) << ' ' << format_real(g.real()) << ' '
          << format_real(g.imag()) << '\n';
    }
  }
}

void write_solution(std::ostream& out, const DiskSolution& sol) {
  out << to_string(sol.side) << ' ' << to_string(sol.basis) << ' ' << format_real(sol.lambda) << ' '
      << format_real(sol.radius) << ' ' << sol.n_modes << '\n';
  for (const ModeSolution& m : sol.modes) {
    const auto a = m.alpha.mantissa(), b = m.beta.mantissa();
    out << m.n << ' ' << format_real(a.real()) << ' ' << format_real(a.imag()) << ' ' << m.alpha.exponent() << ' '
        << format_real(b.real()) << ' ' << format_real(b.imag()) << ' ' << m.beta.exponent() << ' '
        << format_real(m.cond) << '\n';
  }
}

DiskSolution read_solution(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok) || tok.size() != 5) throw ParseError("header must be 'side basis lambda radius N'", r.line);
  const Side side = side_token(tok[0], r.line);
  BasisTag basis{};
  try {
    basis = parse_basis(tok[1]);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), r.line);
  }
  if (side_of(basis) != side) throw ParseError("basis does not match side", r.line);
  const double lambda = to_real(tok[2], r.line), radius = to_real(tok[3], r.line);
  require_positive(lambda, "lambda", r.line);
  require_positive(radius, "radius", r.line);
  const long long n_modes = to_int(tok[4], r.line);
  if (n_modes < 1 || n_modes > 1000000) throw ParseError("N must be in [1, 1000000]", r.line);
  DiskSolution sol = empty_solution(side, basis, lambda, radius, static_cast<int>(n_modes));

  std::size_t count = 0;
  while (r.next(tok)) {
    if (tok.size() != 8) throw ParseError("coefficient line must hold 8 fields", r.line);
    const long long n = to_int(tok[0], r.line);
    if (n < -n_modes || n > n_modes + 1) throw ParseError("mode index out of range", r.line);
    ModeSolution& m = sol.mode(static_cast<int>(n));
    m.alpha = XComplex::from_parts({to_real(tok[1], r.line), to_real(tok[2], r.line)}, to_int(tok[3], r.line));
    m.beta = XComplex::from_parts({to_real(tok[4], r.line), to_real(tok[5], r.line)}, to_int(tok[6], r.line));
    m.cond = to_real(tok[7], r.line);
    ++count;
  }
  if (count != sol.modes.size()) {
    throw ParseError("expected " + std::to_string(sol.modes.size()) + " coefficient lines", r.line);
  }
  return sol;
}

std::vector<Vec2> read_targets(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  std::vector<Vec2> out;
  while (r.next(tok)) {
    if (tok.size() != 2) throw ParseError("target line must hold 'x y'", r.line);
    out.push_back({to_real(tok[0], r.line), to_real(tok[1], r.line)});
  }
  return out;
}

void write_evaluations(std::ostream& out, const DiskSolution& sol, const std::vector<Vec2>& targets) {
  for (const Vec2& x : targets) {
    const FieldSample f = eval_disk_solution(sol, x);
    out << format_real(x[0]) << ' ' << format_real(x[1]) << ' ' << format_real(f.value) << ' '
        << format_real(f.gradient[0]) << ' ' << format_real(f.gradient[1]) << ' ' << format_real(f.hessian[0])
        << ' ' << format_real(f.hessian[1]) << ' ' << format_real(f.hessian[2]) << '\n';
  }
}

}  // namespace mbh

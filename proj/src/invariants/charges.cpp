// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "grid_calculus/calculus.hpp"
#include "invariants/invariants.hpp"

namespace liedrag {

SubBox full_box(const Grid& g) { return SubBox{{0.0, 0.0, 0.0}, g.length()}; }

double topological_charge(const OneForm& a, const OneForm& b, const SubBox& box) {
  require_same_grid(a.grid, b.grid, "topological_charge");
  const Grid& g = a.grid;
  for (int c = 0; c < 3; ++c) {
    if (!(box.hi[c] > box.lo[c]) || box.lo[c] < 0.0 || box.hi[c] > g.length()[c]) {
      fail(ErrorKind::kConfig, "topological_charge: degenerate or out-of-box region");
    }
  }
  const ScalarField density = div(cross<VectorTag>(a, b));
  Array masked(g.size(), 0.0);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    bool in = true;
    for (int c = 0; c < 3; ++c) in = in && x[c] >= box.lo[c] && x[c] < box.hi[c];
    if (in) {
      masked[i] = density.values[i];
      ++inside;
    }
  }
  if (inside == 0) fail(ErrorKind::kConfig, "topological_charge: region contains no grid points");
  return volume_integral(masked, g);
}

double topological_charge(const MhdState& s, const std::string& preset, const SubBox& box) {
  if (preset == "ertel") {
    return topological_charge(grad<OneFormTag>(s.S), retag<OneFormTag>(s.u - grad(s.phi)), box);
  }
  if (preset == "entropy-B") return topological_charge(s.Atilde, grad<OneFormTag>(s.S), box);
  fail(ErrorKind::kConfig, "topological_charge: unknown preset '" + preset + "' (ertel, entropy-B)");
}

const std::vector<std::string>& polynomial_arguments() {
  static const std::vector<std::string> names{"ab_rho", "S", "b_grad_ab", "b_grad_ib"};
  return names;
}

namespace {

bool known_argument(const std::string& name) {
  for (const std::string& n : polynomial_arguments()) {
    if (n == name) return true;
  }
  return false;
}

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : t_(text) {}

  Polynomial parse() {
    Polynomial p;
    skip();
    if (pos_ == t_.size()) error("empty expression");
    double sign = 1.0;
    if (peek('+') || peek('-')) sign = t_[pos_++] == '-' ? -1.0 : 1.0;
    while (true) {
      Polynomial::Term term = parse_term();
      term.coeff *= sign;
      p.terms.push_back(std::move(term));
      skip();
      if (pos_ == t_.size()) break;
      if (!peek('+') && !peek('-')) error("expected '+' or '-'");
      sign = t_[pos_++] == '-' ? -1.0 : 1.0;
    }
    return p;
  }

 private:
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < t_.size() && t_[pos_] == c;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::kConfig, "polynomial '" + t_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  Polynomial::Term parse_term() {
    Polynomial::Term term;
    term.coeff = 1.0;
    bool any = false;
    do {
      if (any) ++pos_;   // '*'
      skip();
      if (pos_ == t_.size()) error("missing factor");
      const char c = t_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(t_.substr(pos_), &used);
        } catch (const std::exception&) {
          error("bad number");
        }
        pos_ += used;
        term.coeff *= v;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_')) ++pos_;
        const std::string name = t_.substr(start, pos_ - start);
        if (!known_argument(name)) {
          pos_ = start;
          error("unsupported argument '" + name + "'");
        }
        int power = 1;
        if (peek('^')) {
          ++pos_;
          skip();
          const std::size_t ps = pos_;
          while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
          if (ps == pos_) error("expected integer exponent");
          power = std::stoi(t_.substr(ps, pos_ - ps));
        }
        term.powers[name] += power;
      } else {
        error(std::string("unexpected '") + c + "'");
      }
      any = true;
    } while (peek('*'));
    return term;
  }

  const std::string& t_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) { return PolyParser(text).parse(); }

std::string Polynomial::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::abs(terms[k].coeff));
    if (k == 0) {
      if (terms[k].coeff < 0) os << '-';
    } else {
      os << (terms[k].coeff < 0 ? " - " : " + ");
    }
    os << buf;
    for (const auto& [name, p] : terms[k].powers) {
      os << '*' << name;
      if (p != 1) os << '^' << p;
    }
  }
  return os.str();
}

double generalized_integral(const MhdState& s, const std::string& family, const Polynomial& phi) {
  if (family != "I32" && family != "I43") {
    fail(ErrorKind::kConfig, "generalized_integral: unknown family '" + family + "' (I32, I43)");
  }
  const Grid& g = s.grid();
  bool need[4] = {false, false, false, false};
  const auto& names = polynomial_arguments();
  for (const auto& term : phi.terms) {
    for (const auto& [name, p] : term.powers) {
      for (int k = 0; k < 4; ++k) need[k] = need[k] || name == names[k];
    }
  }

  const ScalarField ab = dot(s.Atilde, s.B);
  const ScalarField ab_rho = ab / s.rho;
  std::map<std::string, const ScalarField*> args;
  args["ab_rho"] = &ab_rho;
  args["S"] = &s.S;
  ScalarField b_grad_ab;
  if (need[2]) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (ab.values[i] == 0.0) fail(ErrorKind::kDomain, "generalized_integral: A.B vanishes; b_grad_ab undefined");
    }
    b_grad_ab = dot(s.B, grad(ab_rho)) / ab;
    args["b_grad_ab"] = &b_grad_ab;
  }
  ScalarField b_grad_ib;
  if (need[3]) {
    const ScalarField ib = dot(s.B, grad(s.S)) / s.rho;
    b_grad_ib = dot(s.B, grad(ib)) / s.rho;
    args["b_grad_ib"] = &b_grad_ib;
  }

  const ScalarField weight =
      family == "I32" ? ab : dot(s.Atilde, cross<VectorTag>(grad(s.S), grad(ab_rho)));
  const ScalarField density = generate(g, [&](std::size_t i) {
    double v = 0.0;
    for (const auto& term : phi.terms) {
      double t = term.coeff;
      for (const auto& [name, p] : term.powers) t *= std::pow(args.at(name)->values[i], p);
      v += t;
    }
    return v * weight.values[i];
  });
  return volume_integral(density);
}

}  // namespace liedrag

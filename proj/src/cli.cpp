#include "coulomb/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "coulomb/errors.hpp"
#include "coulomb/higgs.hpp"
#include "coulomb/presentation.hpp"
#include "coulomb/series.hpp"

namespace coulomb::cli {

using nlohmann::json;

// --- input ----------------------------------------------------------------

namespace {

std::int64_t parse_int(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw InputError(field + ": expected an integer, got " + j.dump());
}

std::size_t parse_count(const json& j, const std::string& field) {
  const std::int64_t v = parse_int(j, field);
  if (v < 0) throw InputError(field + ": expected a nonnegative integer, got " + j.dump());
  return static_cast<std::size_t>(v);
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + "." + key + ": missing");
  return *it;
}

std::vector<Covector> parse_rows(const json& j, const std::string& field, std::optional<std::size_t> width) {
  if (!j.is_array()) throw InputError(field + ": expected a list of integer rows");
  std::vector<Covector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw InputError(f + ": expected a list of integers");
    if (width && j[i].size() != *width)
      throw InputError(f + ": expected " + std::to_string(*width) + " entries, got " + std::to_string(j[i].size()));
    if (!rows.empty() && j[i].size() != rows.front().size())
      throw InputError(f + ": rows must all have the same length");
    Covector row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(parse_int(j[i][k], f + "[" + std::to_string(k) + "]"));
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::int64_t> parse_int_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected a list of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& field) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    // Also accept a bare comma-separated list: 1/2,3
    j = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) j.push_back(item);
  }
  if (!j.is_array()) throw InputError(field + ": expected a list of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    try {
      if (j[i].is_number_integer()) out.emplace_back(static_cast<long>(j[i].get<std::int64_t>()));
      else if (j[i].is_string()) out.push_back(parse_rational(j[i].get<std::string>()));
      else throw InputError(f + ": expected a rational");
    } catch (const InputError&) {
      throw;
    } catch (const std::invalid_argument&) {
      throw InputError(f + ": not a rational: " + j[i].dump());
    }
  }
  return out;
}

json parse_json_argument(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(field + ": malformed JSON (" + std::string(e.what()) + ")");
  }
}

}  // namespace

TheorySpec parse_theory(const json& j) {
  const std::string kind = [&] {
    const json& k = require(j, "kind", "theory");
    if (!k.is_string()) throw InputError("theory.kind: expected \"torus\" or \"quiver\"");
    return k.get<std::string>();
  }();
  if (kind == "torus") {
    TorusTheory t;
    t.rank = parse_count(require(j, "rank", "theory"), "theory.rank");
    t.matter = parse_rows(require(j, "matter", "theory"), "theory.matter", t.rank);
    if (j.contains("flavor")) {
      t.flavor = parse_rows(j["flavor"], "theory.flavor", std::nullopt);
      if (t.flavor.size() != t.matter.size())
        throw InputError("theory.flavor: expected one row per matter row (" + std::to_string(t.matter.size()) + ")");
      t.mass_count = t.flavor.empty() ? 0 : t.flavor.front().size();
    }
    return t;
  }
  if (kind == "quiver") {
    QuiverData q;
    q.vertices = parse_count(require(j, "vertices", "theory"), "theory.vertices");
    q.v = parse_int_list(require(j, "v", "theory"), "theory.v");
    q.w = parse_int_list(require(j, "w", "theory"), "theory.w");
    if (q.v.size() != q.vertices) throw InputError("theory.v: expected " + std::to_string(q.vertices) + " entries");
    if (q.w.size() != q.vertices) throw InputError("theory.w: expected " + std::to_string(q.vertices) + " entries");
    for (std::size_t i = 0; i < q.vertices; ++i) {
      if (q.v[i] < 0) throw InputError("theory.v[" + std::to_string(i) + "]: must be nonnegative");
      if (q.w[i] < 0) throw InputError("theory.w[" + std::to_string(i) + "]: must be nonnegative");
    }
    const json& edges = j.contains("edges") ? j["edges"] : json::array();
    for (const auto& row : parse_rows(edges, "theory.edges", 2)) {
      for (auto e : row)
        if (e < 0 || static_cast<std::size_t>(e) >= q.vertices)
          throw InputError("theory.edges: endpoint " + std::to_string(e) + " is not a vertex");
      q.edges.emplace_back(static_cast<std::size_t>(row[0]), static_cast<std::size_t>(row[1]));
    }
    return q;
  }
  throw InputError("theory.kind: expected \"torus\" or \"quiver\", got \"" + kind + "\"");
}

TheorySpec parse_theory_argument(const std::string& argument) {
  std::string text = argument;
  if (!argument.empty() && argument.front() == '@') {
    std::ifstream in(argument.substr(1));
    if (!in) throw InputError("--theory: cannot read " + argument.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_theory(parse_json_argument(text, "--theory"));
}

IntMatrix parse_matrix(const json& j, const std::string& field) {
  const auto rows = parse_rows(j, field, std::nullopt);
  if (rows.empty()) throw InputError(field + ": expected at least one row");
  return IntMatrix::from_rows(rows, rows.front().size());
}

// --- element expressions ----------------------------------------------------

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::shared_ptr<const TorusTheory> theory, std::string text, ProductMode mode)
      : theory_(std::move(theory)), text_(std::move(text)), mode_(mode) {}

  AlgebraElement parse() {
    AlgebraElement e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("expression \"" + text_ + "\" at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AlgebraElement sum() {
    AlgebraElement e = product();
    for (;;) {
      if (accept('+')) e += product();
      else if (accept('-')) e -= product();
      else return e;
    }
  }

  AlgebraElement product() {
    if (accept('-')) return product().scaled(constant(-1));
    AlgebraElement e = power();
    while (accept('*')) e = multiply(e, power(), mode_);
    return e;
  }

  AlgebraElement power() {
    AlgebraElement base = atom();
    if (!accept('^')) return base;
    const std::int64_t k = integer();
    if (k < 0) fail("negative exponent");
    AlgebraElement out = monopole_generator(theory_, Coweight(theory_->rank, 0));
    for (std::int64_t i = 0; i < k; ++i) out = multiply(out, base, mode_);
    return out;
  }

  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(text_[pos_ - 1]))) fail("expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  Polynomial constant(long c) const { return Polynomial::constant(theory_->coefficient_variables(), Rational(c)); }

  AlgebraElement atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AlgebraElement e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      Rational r;
      try {
        r = parse_rational(text_.substr(start, pos_ - start));
      } catch (const std::invalid_argument&) {
        fail("bad number");
      }
      return scalar_element(theory_, Polynomial::constant(theory_->coefficient_variables(), r));
    }
    if (c == 'X') {
      ++pos_;
      if (!accept('[')) fail("expected '[' after X");
      Coweight l;
      if (!accept(']')) {
        do l.push_back(integer());
        while (accept(','));
        if (!accept(']')) fail("expected ']'");
      }
      if (l.size() != theory_->rank) fail("sector has " + std::to_string(l.size()) + " entries, rank is " + std::to_string(theory_->rank));
      return monopole_generator(theory_, l);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (theory_->rank == 1 && (name == "x" || name == "y"))
        return monopole_generator(theory_, Coweight{name == "x" ? 1 : -1});
      const auto names = theory_->coefficient_names();
      for (std::size_t v = 0; v < names.size(); ++v)
        if (names[v] == name)
          return scalar_element(theory_, Polynomial::variable(theory_->coefficient_variables(), v));
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::shared_ptr<const TorusTheory> theory_;
  std::string text_;
  ProductMode mode_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(const std::shared_ptr<const TorusTheory>& theory, const std::string& text,
                             ProductMode mode) {
  return ExpressionParser(theory, text, mode).parse();
}

// --- output -------------------------------------------------------------------

namespace {

json int_array(const std::vector<std::int64_t>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}

json element_json(const AlgebraElement& e) {
  const auto names = e.theory().coefficient_names();
  json terms = json::array();
  for (const auto& [sector, coeff] : e.terms())
    terms.push_back({{"sector", int_array(sector)}, {"coefficient", coeff.to_string(names)}});
  return terms;
}

std::string degree_string(const Degree& d) {
  if (const auto* r = std::get_if<Rational>(&d)) return coulomb::to_string(*r);
  return "inhomogeneous";
}

std::string charge_string(const std::optional<Coweight>& c) { return c ? format_vector(*c) : "mixed"; }

json charge_json(const std::optional<Coweight>& c) { return c ? int_array(*c) : json("mixed"); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string generator_meaning(const Generator& g, const TorusTheory& t) {
  std::string base;
  if (g.kind == Generator::Kind::w) {
    base = t.coefficient_names()[g.w_index];
  } else {
    base = "X[";
    for (std::size_t j = 0; j < g.sector.size(); ++j) base += (j ? "," : "") + std::to_string(g.sector[j]);
    base += "]";
  }
  if (g.scale == 1) return base;
  return coulomb::to_string(g.scale) + "*" + base;
}

json presentation_json(const Presentation& p, const VerificationReport& report) {
  json gens = json::array();
  for (const auto& g : p.generators) {
    json jg = {{"name", g.name}, {"degree", g.degree.to_string()}, {"scale", coulomb::to_string(g.scale)}};
    if (g.kind == Generator::Kind::w) {
      jg["kind"] = "w";
      jg["index"] = std::to_string(g.w_index);
    } else {
      jg["kind"] = "monopole";
      jg["sector"] = int_array(g.sector);
    }
    gens.push_back(jg);
  }
  json rels = json::array();
  for (const auto& r : p.relations) {
    json terms = json::array();
    for (const auto& [e, c] : r.terms()) {
      json exps = json::array();
      for (int x : e) exps.push_back(std::to_string(x));
      terms.push_back({{"exponents", exps}, {"coefficient", coulomb::to_string(c)}});
    }
    rels.push_back({{"text", p.relation_string(r)}, {"terms", terms}});
  }
  json missed = json::array();
  for (const auto& b : p.missed) {
    json alpha = json::array();
    for (int x : b.w_exponents) alpha.push_back(std::to_string(x));
    missed.push_back({{"w_exponents", alpha}, {"sector", int_array(b.sector)}, {"degree", b.degree.to_string()}});
  }
  return {{"ring", p.to_string()},
          {"generators", gens},
          {"relations", rels},
          {"degree_bound", p.degree_bound.to_string()},
          {"surjective", p.surjective},
          {"missed", missed},
          {"verified", report.passed()}};
}

// --- subcommands --------------------------------------------------------------

struct Options {
  std::string theory;
  std::string order = "5";
  std::string mode = "classical";
  std::string shift;
  std::string fugacities = "off";
  std::string format;
  std::string method = "monopole";
  std::uint64_t seed = 1;
  std::string degree = "3";
  std::string b_matrix;
  std::string lhs, rhs;
  std::string w0, m0;
  std::string gens;
  bool minimal = false;
};

TorusTheory require_torus(const Options& o, const std::string& subcommand) {
  const TheorySpec spec = parse_theory_argument(o.theory);
  if (const auto* t = std::get_if<TorusTheory>(&spec)) {
    try {
      t->validate();
    } catch (const DimensionError& e) {
      throw InputError(std::string("theory: ") + e.what());
    }
    return *t;
  }
  throw InputError("--theory: " + subcommand + " needs a torus theory");
}

HalfInteger parse_half(const std::string& text, const std::string& field) {
  try {
    const HalfInteger h = HalfInteger::parse(text);
    if (h.half_units() < 0) throw InputError(field + ": must be nonnegative");
    return h;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError(field + ": expected an integer or p/2, got \"" + text + "\"");
  }
}

ProductMode parse_mode(const std::string& m) {
  if (m == "classical") return ProductMode::classical;
  if (m == "quantized") return ProductMode::quantized;
  throw InputError("--mode: expected classical or quantized");
}

GradingSpec parse_grading(const Options& o, std::size_t rank) {
  if (o.shift.empty()) return GradingSpec::delta();
  auto c = parse_rational_list(o.shift, "--shift");
  if (c.size() != rank) throw InputError("--shift: expected " + std::to_string(rank) + " entries");
  return GradingSpec::shifted(std::move(c));
}

int mono_hs(const Options& o, std::ostream& out) {
  const TheorySpec spec = parse_theory_argument(o.theory);
  const HalfInteger order = parse_half(o.order, "--order");
  const bool fug = o.fugacities == "on";
  if (o.fugacities != "on" && o.fugacities != "off") throw InputError("--fugacities: expected on or off");
  GradedSeries s;
  if (o.method == "algebra") {
    const auto* t = std::get_if<TorusTheory>(&spec);
    if (!t) throw InputError("--method algebra: needs a torus theory");
    if (fug) throw InputError("--method algebra: fugacities are not supported");
    t->validate();
    s = algebra_hilbert_series(*t, order);
  } else if (o.method == "monopole") {
    const NonabelianTheory nt = std::holds_alternative<TorusTheory>(spec)
                                    ? NonabelianTheory::from_torus(std::get<TorusTheory>(spec))
                                    : quiver_to_theory(std::get<QuiverData>(spec));
    s = monopole_hilbert_series(nt, order, fug);
  } else {
    throw InputError("--method: expected monopole or algebra");
  }
  if (o.format == "json") {
    emit(out, {{"order", order.to_string()},
               {"fugacity_count", std::to_string(s.fugacity_count())},
               {"series", s.to_json()}});
  } else {
    out << s.to_text();
  }
  return 0;
}

int alg_mul(const Options& o, std::ostream& out) {
  const auto theory = share(require_torus(o, "alg-mul"));
  if (o.lhs.empty() || o.rhs.empty()) throw InputError("alg-mul: --lhs and --rhs are required");
  const ProductMode mode = parse_mode(o.mode);
  const AlgebraElement a = parse_element(theory, o.lhs, mode);
  const AlgebraElement b = parse_element(theory, o.rhs, mode);
  const AlgebraElement p = multiply(a, b, mode);
  const GradingSpec grading = parse_grading(o, theory->rank);
  const std::string deg = degree_string(degree(p, grading));
  const auto charge = topological_charge(p);
  if (o.format == "json") {
    emit(out, {{"product", element_json(p)}, {"degree", deg}, {"charge", charge_json(charge)}, {"mode", o.mode}});
  } else {
    out << "product: " << p.to_string() << "\n"
        << "degree: " << deg << "\n"
        << "charge: " << charge_string(charge) << "\n";
  }
  return 0;
}

int quantize_comm(const Options& o, std::ostream& out) {
  const auto theory = share(require_torus(o, "quantize-comm"));
  if (o.lhs.empty() || o.rhs.empty()) throw InputError("quantize-comm: --lhs and --rhs are required");
  const AlgebraElement a = parse_element(theory, o.lhs, ProductMode::quantized);
  const AlgebraElement b = parse_element(theory, o.rhs, ProductMode::quantized);
  const AlgebraElement c = commutator(a, b);
  std::optional<AlgebraElement> pb;
  if (!a.depends_on_hbar() && !b.depends_on_hbar()) pb = poisson_bracket(a, b);
  if (o.format == "json") {
    json j = {{"commutator", element_json(c)}};
    if (pb) j["poisson"] = element_json(*pb);
    emit(out, j);
  } else {
    out << "commutator: " << c.to_string() << "\n";
    if (pb) out << "poisson: " << pb->to_string() << "\n";
  }
  return 0;
}

int present(const Options& o, std::ostream& out, std::ostream& err) {
  const TorusTheory t = require_torus(o, "present");
  const HalfInteger bound = parse_half(o.degree, "--degree");
  std::vector<Coweight> sectors;
  if (o.gens.empty()) {
    sectors = default_generator_sectors(t);
  } else {
    sectors = parse_rows(parse_json_argument(o.gens, "--gens"), "--gens", t.rank);
    for (const auto& s : sectors)
      if (std::all_of(s.begin(), s.end(), [](auto x) { return x == 0; }))
        throw InputError("--gens: the zero sector is not a generator");
  }
  Presentation p = find_relations(t, sectors, bound);
  if (o.minimal) p = minimal_presentation(p);
  const VerificationReport report = verify_presentation(p);
  if (o.format == "json") {
    emit(out, presentation_json(p, report));
  } else {
    out << p.to_string() << "\n";
    out << "generators:\n";
    for (const auto& g : p.generators)
      out << "  " << g.name << " = " << generator_meaning(g, p.theory) << ", degree " << g.degree.to_string() << "\n";
    out << "relations:\n";
    for (const auto& r : p.relations) out << "  " << p.relation_string(r) << "\n";
    out << "complete through degree " << bound.to_string() << " (not verified beyond)\n";
    out << "verification: " << (report.passed() ? "pass" : "fail") << "\n";
    for (const auto& f : report.failures) out << "  " << f << "\n";
  }
  if (!p.surjective) {
    err << "incomplete generators: missed";
    for (const auto& b : p.missed) {
      err << " w^(";
      for (std::size_t i = 0; i < b.w_exponents.size(); ++i) err << (i ? "," : "") << b.w_exponents[i];
      err << ")X" << format_vector(b.sector);
    }
    err << "\n";
    return 1;
  }
  return 0;
}

int higgs_hs(const Options& o, std::ostream& out) {
  const TorusTheory t = require_torus(o, "higgs-hs");
  const HalfInteger order = parse_half(o.order, "--order");
  const GradedSeries s = higgs_hilbert_series(HiggsInput{t.rank, t.matter}, order);
  if (o.format == "json") {
    emit(out, {{"order", order.to_string()}, {"series", s.to_json()}});
  } else {
    out << s.to_text();
  }
  return 0;
}

int duality(const Options& o, std::ostream& out) {
  if (o.b_matrix.empty()) throw InputError("duality: --B is required");
  const IntMatrix b = parse_matrix(parse_json_argument(o.b_matrix, "--B"), "--B");
  const HalfInteger order = parse_half(o.order, "--order");
  const DualityReport r = duality_check(b, order);
  if (o.format == "text") {
    out << "status: " << (r.status == DualityReport::Status::equal ? "equal" : "mismatch") << "\n"
        << "order checked: " << r.order_checked.to_string() << "\n";
    if (r.first_mismatch) out << "first mismatch: q^" << r.first_mismatch->to_string() << "\n";
    out << "molien agrees with invariant count through " << r.flatness_checked.to_string() << ": "
        << (r.molien_agrees ? "yes" : "no") << "\n";
  } else {
    emit(out, r.to_json());
  }
  return 0;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

int fiber_check(const Options& o, std::ostream& out) {
  const TorusTheory t = require_torus(o, "fiber-check");
  std::vector<Rational> m0 = o.m0.empty() ? std::vector<Rational>(t.mass_count, Rational(0))
                                          : parse_rational_list(o.m0, "--m0");
  if (m0.size() != t.mass_count) throw InputError("--m0: expected " + std::to_string(t.mass_count) + " entries");
  std::vector<Rational> w0;
  FiberWitness witness;
  if (!o.w0.empty()) {
    w0 = parse_rational_list(o.w0, "--w0");
    if (w0.size() != t.rank) throw InputError("--w0: expected " + std::to_string(t.rank) + " entries");
    witness = generic_fiber_witness(t, w0, m0);
  } else {
    // Random point from --seed; resample until it avoids every hyperplane.
    std::mt19937_64 rng(o.seed);
    for (int attempt = 0;; ++attempt) {
      w0.assign(t.rank, 0);
      for (auto& x : w0) x = random_rational(rng);
      try {
        witness = generic_fiber_witness(t, w0, m0);
        break;
      } catch (const NonGenericPointError&) {
        if (attempt == 100) throw;
      }
    }
  }
  json scalars = json::array();
  for (const auto& s : witness.scalars) scalars.push_back(coulomb::to_string(s));
  json point = json::array();
  for (const auto& x : w0) point.push_back(coulomb::to_string(x));
  if (o.format == "json") {
    emit(out, {{"w0", point}, {"scalars", scalars}, {"all_nonzero", witness.all_nonzero()}});
  } else {
    out << "w0: " << point.dump() << "\n"
        << "scalars: " << scalars.dump() << "\n"
        << "generic fiber is the dual torus: " << (witness.all_nonzero() ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coulomb branches of 3d N=4 gauge theories", "coulomb"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;

  const auto order_opt = [&](CLI::App* s) { s->add_option("--order", o.order, "truncation order, integer or p/2"); };
  const auto format_opt = [&](CLI::App* s) {
    s->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  const auto theory_opt = [&](CLI::App* s) {
    s->add_option("--theory", o.theory, "theory JSON, inline or @path")->required();
  };

  auto* mono = app.add_subcommand("mono-hs", "monopole-formula Hilbert series");
  theory_opt(mono);
  order_opt(mono);
  mono->add_option("--fugacities", o.fugacities, "on or off");
  mono->add_option("--method", o.method, "monopole (lattice sum) or algebra (basis count)");

  auto* mul = app.add_subcommand("alg-mul", "product of two elements of the abelian Coulomb branch algebra");
  theory_opt(mul);
  mul->add_option("--lhs", o.lhs, "left factor, e.g. 'x' or '(w + 1)*X[2]'")->required();
  mul->add_option("--rhs", o.rhs, "right factor")->required();
  mul->add_option("--mode", o.mode, "classical or quantized");
  mul->add_option("--shift", o.shift, "grading shift covector, e.g. '[\"1/2\"]'");

  auto* pres = app.add_subcommand("present", "generators and relations up to a degree");
  theory_opt(pres);
  pres->add_option("--degree", o.degree, "degree bound, integer or p/2");
  pres->add_option("--gens", o.gens, "generator sectors as JSON rows (default: automatic)");
  pres->add_flag("--minimal", o.minimal, "eliminate w's expressed linearly by a relation");

  auto* comm = app.add_subcommand("quantize-comm", "commutator in the quantized algebra");
  theory_opt(comm);
  comm->add_option("--lhs", o.lhs, "first element")->required();
  comm->add_option("--rhs", o.rhs, "second element")->required();

  auto* higgs = app.add_subcommand("higgs-hs", "Higgs-branch Molien series of a torus theory");
  theory_opt(higgs);
  order_opt(higgs);

  auto* dual = app.add_subcommand("duality", "compare Coulomb and Higgs series of a hypertoric dual pair");
  dual->add_option("--B", o.b_matrix, "inclusion matrix, e.g. '[[1],[1]]'")->required();
  order_opt(dual);

  auto* fiber = app.add_subcommand("fiber-check", "certify the generic fiber of the integrable system");
  theory_opt(fiber);
  fiber->add_option("--w0", o.w0, "point, e.g. '[\"1/2\",\"3\"]' (default: random from --seed)");
  fiber->add_option("--m0", o.m0, "masses (default: zero)");
  fiber->add_option("--seed", o.seed, "seed for the random point");

  for (auto* s : {mono, mul, pres, comm, higgs, dual, fiber}) format_opt(s);

  std::vector<std::string> argv_storage{"coulomb"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      !app.get_subcommand_no_throw(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "'\n" << app.help();
    return 1;
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }
  if (o.format.empty()) o.format = dual->parsed() ? "json" : "text";

  try {
    if (mono->parsed()) return mono_hs(o, out);
    if (mul->parsed()) return alg_mul(o, out);
    if (pres->parsed()) return present(o, out, err);
    if (comm->parsed()) return quantize_comm(o, out);
    if (higgs->parsed()) return higgs_hs(o, out);
    if (dual->parsed()) return duality(o, out);
    if (fiber->parsed()) return fiber_check(o, out);
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\nwitness: " << format_vector(e.witness()) << "\n";
    return 2;
  } catch (const NonGenericPointError& e) {
    err << "error: " << e.what() << "\nhyperplane: matter " << e.matter_index() << ", covector "
        << format_vector(e.hyperplane()) << "\n";
    return 1;
  } catch (const NonClosureError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    // InputError, DimensionError, EmbeddingError
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace coulomb::cli

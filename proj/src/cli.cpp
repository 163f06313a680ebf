#include "qcover/cli.hpp"

#include <algorithm>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcover/cb_engine.hpp"
#include "qcover/text_cursor.hpp"
#include "qcover/udot.hpp"
#include "qcover/verify.hpp"

namespace qcover {

namespace {

using Json = nlohmann::ordered_json;

// Usage errors found after CLI11 accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Element = std::variant<PBWElement, UDotElement>;

bool looks_dotted(const std::string& s) {
  return s.find("1_") != std::string::npos || s.find("CB(") != std::string::npos;
}

Element parse_any(const std::string& s) {
  if (looks_dotted(s)) return parse_udot(s);
  return parse_element(s);
}

std::string format_any(const Element& x) {
  return std::visit([](const auto& v) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PBWElement>)
      return format_element(v);
    else
      return format_udot(v);
  }, x);
}

CBIndex parse_index(const std::string& s) {
  detail::Cursor cur{s};
  int v[3];
  for (int i = 0; i < 3; ++i) {
    if (i) cur.expect(',');
    const std::size_t at = cur.pos;
    const long x = cur.small_integer();
    if (x < -100000 || x > 100000) {
      cur.pos = at;
      cur.fail("index out of range");
    }
    v[i] = static_cast<int>(x);
  }
  if (!cur.at_end()) cur.fail("expected a,b,k");
  if (v[0] < 0 || v[1] < 0) throw UsageError("canonical basis index needs a, b >= 0");
  return {v[0], v[1], v[2]};
}

Json index_json(const CBIndex& i) { return Json::array({i.a, i.b, i.k}); }

struct Output {
  std::string format = "text";
  std::ostream& out;

  bool json() const { return format == "json"; }
  Json head(const std::string& command) const {
    Json j;
    j["schema"] = "qcover/1";
    j["command"] = command;
    return j;
  }
  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
  // a command whose result is a single line of text
  void result(const std::string& command, const std::string& text) const {
    if (json()) {
      Json j = head(command);
      j["result"] = text;
      emit(j);
    } else {
      out << text << "\n";
    }
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the covering quantum algebra of osp(1|2)", "qcover"};
  app.require_subcommand(1);
  Output o{"text", out};
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string x_text, y_text, name;
  auto* normal_form = app.add_subcommand("normal-form", "PBW or U-dot normal form of an element");
  normal_form->add_option("element", x_text)->required();
  auto* mul = app.add_subcommand("mul", "Product of two elements");
  mul->add_option("x", x_text)->required();
  mul->add_option("y", y_text)->required();
  auto* morphism = app.add_subcommand("morphism", "Apply psi, omega, tau or rho");
  morphism->add_option("name", name)->required()->check(CLI::IsMember({"psi", "omega", "tau", "rho"}));
  morphism->add_option("x", x_text)->required();
  auto* copro = app.add_subcommand("coproduct", "Coproduct of a PBW element");
  copro->add_option("x", x_text)->required();

  int a = 0, b = 0, k = 0;
  auto* cb = app.add_subcommand("cb", "Canonical basis element of U-dot");
  cb->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  cb->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  cb->add_option("--k", k)->required();
  auto* cb_exp = app.add_subcommand("cb-expand", "Expand a U-dot element in the canonical basis");
  cb_exp->add_option("x", x_text)->required();

  int s = 0, t = 0;
  auto* tcb = app.add_subcommand("tensor-cb", "Canonical basis of ^omega L(s) (x) L(t)");
  tcb->add_option("--s", s)->required()->check(CLI::NonNegativeNumber);
  tcb->add_option("--t", t)->required()->check(CLI::NonNegativeNumber);

  std::string i1_text, i2_text;
  auto* sc = app.add_subcommand("struct-const", "Structure constants of a canonical basis product");
  sc->add_option("--i1", i1_text, "a,b,k")->required();
  sc->add_option("--i2", i2_text, "a,b,k")->required();

  std::string strategy = "strip-e";
  auto* form = app.add_subcommand("form", "Bilinear form of two U-dot elements");
  form->add_option("x", x_text)->required();
  form->add_option("y", y_text)->required();
  form->add_option("--strategy", strategy)->check(CLI::IsMember({"strip-e", "strip-f-first"}))->capture_default_str();

  std::string pi_text;
  auto* spec = app.add_subcommand("specialize", "Set pi to +1 or -1 in a U-dot element or scalar");
  spec->add_option("--pi", pi_text)->required()->check(CLI::IsMember({"+1", "1", "-1"}));
  spec->add_option("x", x_text)->required();

  std::string tensor_text;
  auto* dec = app.add_subcommand("decompose", "Isotypic decomposition of L(s) (x) L(t)");
  dec->add_option("--tensor", tensor_text, "s,t")->required();

  std::string suite;
  VerifyOptions vo;
  auto* ver = app.add_subcommand("verify", "Run a verification suite, or all");
  ver->add_option("suite", suite)->required();
  ver->add_option("--max-n", vo.max_n, "Degree / index bound");
  ver->add_option("--modules", vo.modules, "Bound on s, t for L(s) (x) L(t)");
  ver->add_option("--box", vo.box, "Bound on a, b");
  ver->add_option("--weights", vo.weights, "Bound on |k|");
  ver->add_option("--samples", vo.samples, "Random elements per sector");
  ver->add_option("--cutoff", vo.cutoff, "Verma truncation");
  ver->add_option("--seed", vo.seed);
  ver->add_option("--threads", vo.threads, "Worker threads (default QCOVER_THREADS)");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*normal_form) {
      o.result("normal-form", format_any(parse_any(x_text)));
    } else if (*mul) {
      const Element x = parse_any(x_text), y = parse_any(y_text);
      if (x.index() != y.index()) throw UsageError("cannot multiply a PBW element with a U-dot element");
      if (x.index() == 0)
        o.result("mul", format_element(std::get<0>(x) * std::get<0>(y)));
      else
        o.result("mul", format_udot(std::get<1>(x) * std::get<1>(y)));
    } else if (*morphism) {
      const Morphism m = *parse_morphism(name);
      const Element x = parse_any(x_text);
      if (x.index() == 0)
        o.result("morphism", format_element(apply_morphism(m, std::get<0>(x))));
      else
        o.result("morphism", format_udot(apply_morphism(m, std::get<1>(x))));
    } else if (*copro) {
      if (looks_dotted(x_text)) throw UsageError("coproduct takes a PBW element");
      o.result("coproduct", format_tensor(coproduct(parse_element(x_text))));
    } else if (*cb) {
      o.result("cb", format_udot(cb_element({a, b, k})));
    } else if (*cb_exp) {
      const auto exp = cb_expand(parse_udot(x_text));
      if (o.json()) {
        Json j = o.head("cb-expand");
        j["terms"] = Json::array();
        for (const auto& [i, c] : exp) j["terms"].push_back({{"idx", index_json(i)}, {"scalar", format_rational(c)}});
        o.emit(j);
      } else {
        std::string line;
        for (const auto& [i, c] : exp) {
          if (!line.empty()) line += " + ";
          line += detail::coefficient_prefix(c) + format_cb_index(i);
        }
        out << (line.empty() ? "0" : line) << "\n";
      }
    } else if (*tcb) {
      const TensorCB r = tensor_cb(s, t);
      if (o.json()) {
        Json j = o.head("tensor-cb");
        j["s"] = s;
        j["t"] = t;
        j["cb"] = Json::array();
        for (const auto& [ab, coeffs] : r.elements) {
          Json e{{"a", ab.first}, {"b", ab.second}, {"coeffs", Json::array()}};
          for (const auto& [mn, c] : coeffs)
            e["coeffs"].push_back({{"m", mn.first}, {"n", mn.second}, {"scalar", format_scalar(c)}});
          j["cb"].push_back(e);
        }
        o.emit(j);
      } else {
        for (const auto& [ab, coeffs] : r.elements) {
          out << "b(" << ab.first << "," << ab.second << ") =";
          bool first = true;
          for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            out << (first ? " " : " + ") << detail::coefficient_prefix(PiRational(it->second)) << "E^(" << it->first.first
                << ")eta (x) F^(" << it->first.second << ")nu";
            first = false;
          }
          out << "\n";
        }
      }
    } else if (*sc) {
      const CBIndex i1 = parse_index(i1_text), i2 = parse_index(i2_text);
      const auto table = structure_constants(i1, i2);
      if (o.json()) {
        Json j = o.head("struct-const");
        j["i1"] = index_json(i1);
        j["i2"] = index_json(i2);
        j["products"] = Json::array();
        for (const auto& [i, c] : table) j["products"].push_back({{"idx", index_json(i)}, {"scalar", format_scalar(c)}});
        o.emit(j);
      } else {
        std::string line;
        for (const auto& [i, c] : table) {
          if (!line.empty()) line += " + ";
          line += detail::coefficient_prefix(PiRational(c)) + format_cb_index(i);
        }
        out << (line.empty() ? "0" : line) << "\n";
      }
    } else if (*form) {
      const FormStrategy st = strategy == "strip-e" ? FormStrategy::strip_e : FormStrategy::strip_f_first;
      o.result("form", format_rational(bilinear_form(parse_udot(x_text), parse_udot(y_text), st)));
    } else if (*spec) {
      const int sign = pi_text == "-1" ? -1 : 1;
      if (looks_dotted(x_text))
        o.result("specialize", format_specialized(specialize_udot(parse_udot(x_text), sign)));
      else
        o.result("specialize", format_laurent(specialize(parse_scalar(x_text), sign)));
    } else if (*dec) {
      const CBIndex st = parse_index(tensor_text + ",0");
      const auto parts = casimir_decompose(tensor(simple_module(st.a, 1), simple_module(st.b, 1)));
      if (o.json()) {
        Json j = o.head("decompose");
        j["s"] = st.a;
        j["t"] = st.b;
        j["summands"] = Json::array();
        for (const auto& [n, m] : parts) j["summands"].push_back({{"n", n}, {"multiplicity", m}});
        o.emit(j);
      } else {
        std::string line;
        for (const auto& [n, m] : parts) {
          if (!line.empty()) line += " + ";
          line += (m > 1 ? std::to_string(m) + " " : "") + "L(" + std::to_string(n) + ")";
        }
        out << line << "\n";
      }
    } else if (*ver) {
      std::vector<std::string> names;
      if (suite == "all")
        names = suite_names();
      else if (is_suite(suite))
        names = {suite};
      else
        throw UsageError("unknown suite '" + suite + "'");
      std::vector<VerifyResult> results;
      for (const auto& n : names) results.push_back(run_suite(n, vo));
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.ok; });
      if (o.json()) {
        Json j = o.head("verify");
        j["ok"] = ok;
        j["results"] = Json::array();
        for (const auto& r : results)
          j["results"].push_back({{"suite", r.suite}, {"ok", r.ok}, {"cases", r.cases}, {"message", r.message}});
        o.emit(j);
      } else if (results.size() == 1) {
        out << results[0].message << "\n";
      } else {
        for (const auto& r : results) out << r.suite << ": " << r.message << "\n";
        const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.ok; });
        out << (ok ? "OK: all " + std::to_string(results.size()) + " suites passed"
                   : "FAIL: " + std::to_string(failed) + " of " + std::to_string(results.size()) + " suites failed")
            << "\n";
      }
      return ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qcover

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chlink/chlink.hpp"

namespace chlink {
namespace cli_detail {

constexpr int kDegreeCeiling = 6;

inline std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

inline nlohmann::json foi_json(const FirstOrderInvariant& f) {
  nlohmann::json j;
  j["degree"] = f.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(f.degree);
  j["parts"] = nlohmann::json::array();
  for (const LieSeries& p : f.parts) j["parts"].push_back(to_text(p));
  return j;
}

inline void foi_text(std::ostream& out, const FirstOrderInvariant& f) {
  if (f.is_zero()) {
    out << "degree none\n";
    return;
  }
  out << "degree " << f.degree << "\n";
  for (std::size_t i = 0; i < f.parts.size(); ++i)
    out << "part" << i + 1 << " = " << to_text(f.parts[i]) << "\n";
}

inline nlohmann::json report_json(const VanishingReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["s"] = r.s;
  j["k"] = r.k;
  j["pass"] = r.pass;
  if (r.counterexample) {
    j["counterexample"] = {{"where", r.counterexample->where},
                           {"series", r.counterexample->series}};
  }
  return j;
}

inline void report_text(std::ostream& out, const VanishingReport& r) {
  out << r.check << " s=" << r.s << " k=" << r.k << " "
      << (r.pass ? "PASS" : "FAIL") << "\n";
  if (r.counterexample)
    out << "  counterexample at " << r.counterexample->where << ": "
        << r.counterexample->series << "\n";
}

struct Options {
  int degree = 0;
  bool have_degree = false;
  std::string format = "text";
  std::uint64_t seed = 0;
  bool echo = false;

  bool json() const { return format == "json"; }

  int checked_degree() const {
    if (!have_degree) throw Error("--degree is required for this command");
    if (degree < 1) throw Error("--degree must be at least 1");
    if (degree > kDegreeCeiling)
      std::cerr << "warning: degree " << degree
                << " exceeds the default ceiling of " << kDegreeCeiling
                << "; basis sizes grow quickly\n";
    return degree;
  }
};

inline int run_expand(const Options& opt, const std::string& word_text) {
  const int n = std::max(1, max_generator_index(word_text));
  const GroupWord w = parse_group_word(word_text, n);
  if (opt.echo) {
    std::cout << to_text(w) << "\n";
    return 0;
  }
  const int s = opt.checked_degree();
  const NcSeries magnus = magnus_expand(w, s);
  const LieSeries ch = ch_expand(w, s);
  if (opt.json()) {
    nlohmann::json j;
    j["ch"] = to_text(ch);
    j["magnus"] = to_text(magnus);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "magnus = " << to_text(magnus) << "\n";
    std::cout << "ch = " << to_text(ch) << "\n";
  }
  return 0;
}

inline int run_bch(const Options& opt, const std::string& a_text,
                   const std::string& b_text) {
  const int n = std::max({1, max_generator_index(a_text),
                          max_generator_index(b_text)});
  const GroupWord a = parse_group_word(a_text, n);
  const GroupWord b = parse_group_word(b_text, n);
  if (opt.echo) {
    std::cout << to_text(a) << "\n" << to_text(b) << "\n";
    return 0;
  }
  const int s = opt.checked_degree();
  const LieSeries result = bch(ch_expand(a, s), ch_expand(b, s));
  if (opt.json()) {
    nlohmann::json j;
    j["bch"] = to_text(result);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "bch = " << to_text(result) << "\n";
  }
  return 0;
}

inline int run_longitudes(const Options& opt, const StringLinkWord& w) {
  const LongitudeSystem sys = longitudes(w);
  if (opt.json()) {
    nlohmann::json j;
    j["n"] = sys.n;
    j["longs"] = nlohmann::json::array();
    for (const GroupWord& l : sys.longs) j["longs"].push_back(to_text(l));
    j["linking"] = sys.linking;
    std::cout << j.dump() << "\n";
  } else {
    for (int i = 0; i < sys.n; ++i)
      std::cout << "l" << i + 1 << " = " << to_text(sys.longs[i]) << "\n";
    std::cout << "linking =";
    for (const auto& row : sys.linking) {
      for (long long v : row) std::cout << " " << v;
      std::cout << " ;";
    }
    std::cout << "\n";
  }
  return 0;
}

inline int run_mu(const Options& opt, const StringLinkWord& w) {
  const int s = opt.checked_degree();
  const auto values = mu_first_nonvanishing(longitudes(w), s);
  if (opt.json()) {
    nlohmann::json j;
    j["mu"] = nlohmann::json::array();
    for (const MuValue& v : values) {
      nlohmann::json entry;
      entry["index"] = v.index;
      if (v.value.fits_slong_p())
        entry["value"] = static_cast<long long>(v.value.get_si());
      else
        entry["value"] = v.value.get_str();
      j["mu"].push_back(std::move(entry));
    }
    std::cout << j.dump() << "\n";
  } else {
    if (values.empty()) std::cout << "mu trivial through degree " << s << "\n";
    for (const MuValue& v : values) {
      std::cout << "mu(";
      for (int i : v.index) std::cout << i;
      std::cout << ") = " << v.value.get_str() << "\n";
    }
  }
  return 0;
}

inline int run_ch(const Options& opt, const StringLinkWord& w) {
  const int s = opt.checked_degree();
  if (s < 2) throw Error("ch needs --degree at least 2");
  const FirstOrderInvariant f = ch_first_nonvanishing(longitudes(w), s);
  if (opt.json()) {
    std::cout << foi_json(f).dump() << "\n";
  } else {
    foi_text(std::cout, f);
  }
  return 0;
}

inline int run_invert_check(const Options& opt, const StringLinkWord& w) {
  const int s = opt.checked_degree();
  if (s < 2) throw Error("invert-check needs --degree at least 2");
  const InvertReport rep = detect_noninvertible(w, s);
  const std::string verdict =
      rep.verdict == InvertVerdict::Distinct ? "DISTINCT" : "INCONCLUSIVE";
  if (opt.json()) {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["forward"] = foi_json(rep.forward);
    j["reversed"] = foi_json(rep.reversed);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "verdict " << verdict << "\n";
    std::cout << "forward:\n";
    foi_text(std::cout, rep.forward);
    std::cout << "reversed:\n";
    foi_text(std::cout, rep.reversed);
  }
  return 0;
}

inline int run_vanish_check(const Options& opt, const StringLinkWord& w) {
  const int s = opt.checked_degree();
  const VanishingReport phi = vanishing_check_phi(w, s);
  const VanishingReport bracket = vanishing_check_bracket(w, s);
  if (opt.json()) {
    nlohmann::json j;
    j["phi"] = report_json(phi);
    j["bracket"] = report_json(bracket);
    std::cout << j.dump() << "\n";
  } else {
    report_text(std::cout, phi);
    report_text(std::cout, bracket);
  }
  return phi.pass && bracket.pass ? 0 : 1;
}

inline int run_weight(const Options& opt, const StringLinkWord& w) {
  const int s = opt.checked_degree();
  const std::vector<LieSeries> parts = chord_weight(w, s);
  if (opt.json()) {
    nlohmann::json j;
    j["s"] = s;
    j["parts"] = nlohmann::json::array();
    for (const LieSeries& p : parts) j["parts"].push_back(to_text(p));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "s " << s << "\n";
    for (std::size_t i = 0; i < parts.size(); ++i)
      std::cout << "part" << i + 1 << " = " << to_text(parts[i]) << "\n";
  }
  return 0;
}

}  // namespace cli_detail

inline int cli_main(int argc, char** argv) {
  using cli_detail::Options;
  CLI::App app{"Campbell-Hausdorff and Milnor invariants of string links"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--degree", opt.degree, "truncation degree s")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { opt.have_degree = true; });
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");
  app.add_option("--seed", opt.seed, "seed for randomized harnesses");
  app.add_flag("--echo", opt.echo, "parse, print the canonical form, exit");

  std::string word_a, word_b, file_path;
  CLI::App* expand = app.add_subcommand("expand", "Magnus and CH expansions of a group word");
  expand->add_option("word", word_a, "group word, e.g. \"x1 x2'\"")->required();
  CLI::App* bch_cmd = app.add_subcommand("bch", "Campbell-Hausdorff product of two group words");
  bch_cmd->add_option("word_a", word_a, "left group word")->required();
  bch_cmd->add_option("word_b", word_b, "right group word")->required();
  CLI::App* longs = app.add_subcommand("longitudes", "longitude system of a string link");
  CLI::App* mu = app.add_subcommand("mu", "first non-vanishing Milnor invariants");
  CLI::App* ch = app.add_subcommand("ch", "first non-vanishing Campbell-Hausdorff invariant");
  CLI::App* invert = app.add_subcommand("invert-check", "compare a link with its reverse");
  CLI::App* vanish = app.add_subcommand("vanish-check", "finite-type vanishing of the resolution sum");
  CLI::App* weight = app.add_subcommand("weight", "chord-diagram weight of a singular word");
  for (CLI::App* c : {longs, mu, ch, invert, vanish, weight})
    c->add_option("file", file_path, "string-link word file, or - for stdin")
        ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (expand->parsed()) return cli_detail::run_expand(opt, word_a);
    if (bch_cmd->parsed()) return cli_detail::run_bch(opt, word_a, word_b);
    const StringLinkWord w = parse_word(cli_detail::read_input(file_path));
    if (opt.echo) {
      std::cout << to_text(w);
      return 0;
    }
    if (longs->parsed()) return cli_detail::run_longitudes(opt, w);
    if (mu->parsed()) return cli_detail::run_mu(opt, w);
    if (ch->parsed()) return cli_detail::run_ch(opt, w);
    if (invert->parsed()) return cli_detail::run_invert_check(opt, w);
    if (vanish->parsed()) return cli_detail::run_vanish_check(opt, w);
    if (weight->parsed()) return cli_detail::run_weight(opt, w);
    throw Error("no command selected");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal defect: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chlink

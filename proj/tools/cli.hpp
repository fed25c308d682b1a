#pragma once

// Command-line front end. run() does all the work and returns the result as
// data; main() only prints it.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ermcode/ermcode.hpp"

namespace ermcode::cli {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kParameter = 3, kVerification = 4 };

struct CommandResult {
  bool ok = true;
  Json payload;      ///< empty on error
  std::string text;  ///< stdout rendering when it differs from payload.dump()
  std::string diagnostics;
  int exit_code = kOk;
};

/// Raised for inputs that parse but fail a requested check.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for malformed command-line values (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw UsageError(std::string("malformed ") + what + " '" + s + "'");
  return v;
}

/// Comma-separated residues, no whitespace.
inline ZqWord parse_sequence(const std::string& csv, Residue q) {
  std::vector<Residue> entries;
  for (const auto& tok : split(csv, ',')) {
    const auto v = parse_number<std::uint64_t>(tok, "residue");
    if (v >= q) throw ParameterError("residue " + tok + " is not in [0, " + std::to_string(q) + ")");
    entries.push_back(static_cast<Residue>(v));
  }
  return ZqWord(q, std::move(entries));
}

inline std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) return out;
  for (const auto& tok : split(csv, ',')) out.push_back(parse_number<int>(tok, "integer"));
  return out;
}

/// re:im pairs separated by commas.
inline std::vector<Complex> parse_complex_csv(const std::string& csv) {
  std::vector<Complex> out;
  for (const auto& tok : split(csv, ',')) {
    const auto parts = split(tok, ':');
    if (parts.size() != 2) throw UsageError("complex sample '" + tok + "' is not of the form re:im");
    out.emplace_back(parse_number<double>(parts[0], "real part"), parse_number<double>(parts[1], "imaginary part"));
  }
  return out;
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline Json load_json(const std::string& arg) {
  std::string body = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string join_residues(const ZqWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(w[i]);
  }
  return s;
}

inline Json row_json(const TableRow& row) {
  return {{"m", row.m},
          {"h", row.h},
          {"r", row.r},
          {"k", row.k},
          {"s", row.s},
          {"t", row.t},
          {"R1", row.rate1 ? Json(*row.rate1) : Json(nullptr)},
          {"R2", row.rate2},
          {"dL", row.lee_distance},
          {"dE2", row.euclid_sq_distance}};
}

inline std::string render_rows(const std::vector<TableRow>& rows) {
  std::string out = "  m  h  r   s   t    R1    R2   dL    dE2\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%3d%3d%3d%4d%4d%6s%6s%5lld%7s\n", row.m, row.h, row.r, row.s, row.t,
                  row.rate1_string().c_str(), row.rate2_string().c_str(), static_cast<long long>(row.lee_distance),
                  row.euclid_string().c_str());
    out += buf;
  }
  return out;
}

struct CodeOptions {
  std::string code;
  std::string family;
  int construction = 0;
  int r = -1, m = -1, h = 1, k = 0;
  std::string perms;
};

inline void add_code_options(CLI::App* sub, CodeOptions& o, bool allow_file) {
  if (allow_file) sub->add_option("--code", o.code, "code JSON (inline or file path)");
  sub->add_option("--family", o.family, "erm | rm | zrm | a");
  sub->add_option("--construction", o.construction, "1 or 2")->check(CLI::IsMember({1, 2}));
  sub->add_option("--r", o.r, "order");
  sub->add_option("--m", o.m, "number of variables");
  sub->add_option("--h", o.h, "alphabet Z_{2^h}");
  sub->add_option("--k", o.k, "number of restricted variables");
  sub->add_option("--perms", o.perms, "representative spec JSON for construction 1 (default: identity paths)");
}

inline CosetCode build_code(const CodeOptions& o) {
  if (!o.code.empty()) return coset_code_from_json(load_json(o.code));
  if (o.m < 0 || o.r < 0) throw UsageError("need --code, or --r and --m with --family or --construction");
  if (o.construction == 1) {
    const CosetRepSpec spec = o.perms.empty() ? CosetRepSpec::identity(o.m, o.k, o.h) : rep_spec_from_json(load_json(o.perms));
    return construction1(o.k, o.r, o.m, o.h, spec);
  }
  if (o.construction == 2) return construction2(o.k, o.r, o.m, o.h);
  if (o.family.empty()) throw UsageError("need --family or --construction");
  switch (code_family_from_string(o.family)) {
    case CodeFamily::Erm: return as_coset_code(erm_code(o.r, o.m, o.h));
    case CodeFamily::Rm: return as_coset_code(rm_code(o.r, o.m, o.h));
    case CodeFamily::Zrm: return as_coset_code(zrm_code(o.r, o.m, o.h));
    case CodeFamily::A: return as_coset_code(a_code(o.k, o.r, o.m, o.h));
    default: throw ParameterError("family must be erm, rm, zrm or a");
  }
}

inline Json code_json(const CosetCode& c) {
  return c.construction == 0 ? to_json(c.base) : to_json(c);
}

inline Json distance_json(const DistanceReport& d) {
  return {{"method", d.method == DistanceMethod::Exhaustive ? "exhaustive" : "sampled"},
          {"exact", d.exact},
          {"lee", d.lee},
          {"euclid_sq", d.euclid_sq},
          {"lee_lower_bound", d.lee_lower_bound},
          {"euclid_sq_lower_bound", d.euclid_sq_lower_bound},
          {"words_examined", d.words_examined}};
}

}  // namespace detail

/// argv[0] is the program name.
inline CommandResult run(const std::vector<std::string>& argv) {
  CLI::App app{"Complementary sets, effective-degree Reed-Muller codes and PMEPR"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);
  CommandResult result;

  // pmepr
  struct {
    Residue q = 2;
    std::string seq;
    int L = kDefaultOversampling;
    double zeta = 0.0;
  } pm;
  auto* pmepr_cmd = app.add_subcommand("pmepr", "PMEPR of a Z_q sequence on an oversampled grid");
  pmepr_cmd->add_option("--q", pm.q)->required();
  pmepr_cmd->add_option("--seq", pm.seq, "comma-separated residues")->required();
  pmepr_cmd->add_option("--L", pm.L, "oversampling factor");
  pmepr_cmd->add_option("--zeta", pm.zeta, "carrier offset");

  // verify-set
  struct {
    Residue q = 2;
    std::vector<std::string> seqs;
    double tol = kDefaultComplementaryTolerance;
  } vs;
  auto* verify_cmd = app.add_subcommand("verify-set", "check that sequences form a complementary set");
  verify_cmd->add_option("--q", vs.q)->required();
  verify_cmd->add_option("--seq", vs.seqs, "one member; repeat for each")->required();
  verify_cmd->add_option("--tol", vs.tol);

  // construct-set
  struct {
    std::string function;
    std::string variables;
    std::string ends;
    int L = kDefaultOversampling;
  } cs;
  auto* construct_cmd = app.add_subcommand("construct-set", "complementary set containing Psi(f)");
  construct_cmd->add_option("--function", cs.function, "function JSON (inline or file path)")->required();
  construct_cmd->add_option("--variables", cs.variables, "comma-separated restricted variables")->required();
  construct_cmd->add_option("--end-vertices", cs.ends, "end vertex a_d per assignment d");
  construct_cmd->add_option("--L", cs.L);

  // code
  detail::CodeOptions co;
  auto* code_cmd = app.add_subcommand("code", "generator matrix and coset representatives");
  detail::add_code_options(code_cmd, co, false);

  // tables
  struct {
    int pmepr = 4;
    int m = -1, h = -1, r = -1;
    bool json = false;
  } tb;
  auto* tables_cmd = app.add_subcommand("tables", "coding options with PMEPR at most 4 or 8");
  tables_cmd->add_option("--pmepr", tb.pmepr)->required()->check(CLI::IsMember({4, 8}));
  tables_cmd->add_option("--m", tb.m);
  tables_cmd->add_option("--h", tb.h);
  tables_cmd->add_option("--r", tb.r);
  tables_cmd->add_flag("--json", tb.json, "full-precision JSON instead of the rendered table");

  // mindist
  detail::CodeOptions mo;
  std::string method = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = SamplingOptions{}.samples;
  auto* mindist_cmd = app.add_subcommand("mindist", "minimum Lee and squared Euclidean distance");
  detail::add_code_options(mindist_cmd, mo, true);
  mindist_cmd->add_option("--method", method)->check(CLI::IsMember({"exhaustive", "sampled"}));
  mindist_cmd->add_option("--seed", seed, "required for --method sampled");
  mindist_cmd->add_option("--samples", samples);

  // encode / decode
  std::string enc_code, enc_bits;
  auto* encode_cmd = app.add_subcommand("encode", "message bits to codeword");
  encode_cmd->add_option("--code", enc_code, "code JSON (inline or file path)")->required();
  encode_cmd->add_option("--bits", enc_bits, "message as big-endian hex")->required();

  std::string dec_code, dec_rx;
  auto* decode_cmd = app.add_subcommand("decode", "nearest codeword over all cosets");
  decode_cmd->add_option("--code", dec_code, "code JSON (inline or file path)")->required();
  decode_cmd->add_option("--rx", dec_rx, "received samples as re:im,...")->required();

  // golay-enumerate
  int gm = 3;
  Residue gq = 2;
  auto* golay_cmd = app.add_subcommand("golay-enumerate", "census of Golay sequences from path forms");
  golay_cmd->add_option("--m", gm)->required();
  golay_cmd->add_option("--q", gq)->required();

  auto fail = [&](int code, const std::string& msg) {
    result.ok = false;
    result.payload = Json();
    result.text.clear();
    result.exit_code = code;
    result.diagnostics = msg;
    return result;
  };

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    result.text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto* sub : app.get_subcommands()) msg += "\n" + sub->help();
    return fail(kUsage, msg);
  }

  try {
    if (pmepr_cmd->parsed()) {
      const ZqWord w = detail::parse_sequence(pm.seq, pm.q);
      const PmeprReport r = pmepr(w, {pm.zeta, pm.L});
      result.payload = {{"n", r.n}, {"L", r.oversampling}, {"pmepr", r.pmepr}, {"argmax_theta", r.argmax_theta}};
    } else if (verify_cmd->parsed()) {
      std::vector<PolyphaseVector> members;
      for (const auto& s : vs.seqs) members.emplace_back(detail::parse_sequence(s, vs.q));
      const ComplementarySet set(std::move(members));
      const auto rep = is_complementary_set(set, vs.tol);
      const Json body = {{"complementary", rep.complementary},
                         {"size", set.size()},
                         {"length", set.length()},
                         {"max_residual", rep.max_residual},
                         {"worst_shift", rep.worst_shift}};
      if (!rep.complementary) throw VerificationFailure("not a complementary set: " + body.dump());
      result.payload = body;
    } else if (construct_cmd->parsed()) {
      const GeneralizedBooleanFunction f = gbf_from_json(detail::load_json(cs.function));
      const auto vars = detail::parse_int_list(cs.variables);
      const auto ends = detail::parse_int_list(cs.ends);
      const ComplementarySetWitness w = build_complementary_set(f, vars, ends);
      const auto rep = is_complementary_set(w.as_set());
      Json members = Json::array();
      double worst = 0.0;
      EnvelopeSampler sampler(std::size_t{1} << f.num_variables(), {0.0, cs.L});
      for (const auto& g : w.members) {
        const ZqWord word = to_zq_word(g);
        const double p = sampler.measure(word).pmepr;
        worst = std::max(worst, p);
        members.push_back({{"label", to_json(g)}, {"word", word.entries()}, {"pmepr", p}});
      }
      const Json body = {{"variables", w.variables},
                         {"end_vertices", w.end_vertex_choice},
                         {"selector", to_json(w.selector)},
                         {"members", members},
                         {"complementary", rep.complementary},
                         {"max_residual", rep.max_residual},
                         {"max_pmepr", worst},
                         {"pmepr_bound", std::ldexp(1.0, static_cast<int>(w.k()) + 1)}};
      if (!rep.complementary) throw VerificationFailure("witness is not complementary: residual " + std::to_string(rep.max_residual));
      result.payload = body;
    } else if (code_cmd->parsed()) {
      result.payload = detail::code_json(detail::build_code(co));
    } else if (tables_cmd->parsed()) {
      std::vector<TableRow> rows;
      for (const auto& row : coding_options(tb.pmepr))
        if ((tb.m < 0 || row.m == tb.m) && (tb.h < 0 || row.h == tb.h) && (tb.r < 0 || row.r == tb.r)) rows.push_back(row);
      Json arr = Json::array();
      for (const auto& row : rows) arr.push_back(detail::row_json(row));
      result.payload = {{"pmepr_bound", tb.pmepr}, {"rows", arr}};
      if (!tb.json) result.text = detail::render_rows(rows);
    } else if (mindist_cmd->parsed()) {
      const CosetCode c = detail::build_code(mo);
      const DistanceMethod dm = method == "sampled" ? DistanceMethod::Sampled : DistanceMethod::Exhaustive;
      if (dm == DistanceMethod::Sampled && !seed) throw UsageError("--method sampled requires --seed");
      const SamplingOptions so{samples, seed.value_or(0)};
      result.payload = detail::distance_json(c.construction == 0 ? min_distance(c.base, dm, so) : min_distance(c, dm, so));
    } else if (encode_cmd->parsed()) {
      const CosetCode c = coset_code_from_json(detail::load_json(enc_code));
      const ZqWord w = encode(c, MessageBits::from_hex(enc_bits, static_cast<std::size_t>(c.message_bits())));
      result.payload = {{"word", w.entries()}};
      result.text = detail::join_residues(w) + "\n";
    } else if (decode_cmd->parsed()) {
      const CosetCode c = coset_code_from_json(detail::load_json(dec_code));
      const DecodeResult d = decode(c, detail::parse_complex_csv(dec_rx));
      result.payload = {{"bits", d.message.to_hex()}, {"metric", d.metric}};
    } else if (golay_cmd->parsed()) {
      const GolayCensus g = golay_census(gm, gq);
      const BigCount distinct = g.sequences.size();
      const Json body = {{"m", g.m},
                         {"q", g.q},
                         {"distinct", g.sequences.size()},
                         {"expected", g.expected.str()},
                         {"functions", g.functions},
                         {"pairs_checked", g.pairs_checked},
                         {"max_residual", g.max_residual},
                         {"max_pmepr", g.max_pmepr}};
      if (distinct != g.expected || g.max_residual > kDefaultComplementaryTolerance || g.max_pmepr > 2.0 + 1e-6)
        throw VerificationFailure("census check failed: " + body.dump());
      result.payload = body;
    }
  } catch (const UsageError& e) {
    return fail(kUsage, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kUsage, std::string("malformed JSON: ") + e.what());
  } catch (const VerificationFailure& e) {
    return fail(kVerification, e.what());
  } catch (const ParameterError& e) {
    return fail(kParameter, e.what());
  } catch (const HypothesisError& e) {
    return fail(kParameter, e.what());
  } catch (const BudgetError& e) {
    return fail(kParameter, e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, std::string("internal error: ") + e.what());
  }
  return result;
}

}  // namespace ermcode::cli

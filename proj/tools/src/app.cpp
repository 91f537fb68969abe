#include "dmuss/cli/app.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dmuss/cli/files.hpp"
#include "dmuss/error.hpp"
#include "dmuss/verify.hpp"
#include "dmuss/worked_example.hpp"

namespace dmuss::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  std::string instance;
  std::string plan;
  std::string messages;
  std::string shares;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t user = 0;
  std::size_t trials = 100;
  bool audit = false;
  bool brute_force = false;
  bool privacy = false;
  bool entropy = false;
  bool roundtrip = false;
  bool list = false;
};

std::string one_based(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + "}";
}

std::string join(const gf::Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].value);
  return s + "]";
}

void print_matrix(std::ostream& out, const linalg::Matrix& m, const std::string& indent = "  ") {
  if (m.cols() == 0) {
    out << indent << "(" << m.rows() << " x 0)\n";
    return;
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << std::setw(2) << m(r, c).value;
    out << '\n';
  }
}

void emit(const Options& o, std::ostream& out, const json& j) {
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json(o.out, j);
  }
}

// --- check ---------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const Instance in = parse_instance(read_json(o.instance));
  if (o.list) {
    for (const auto& c : capacity_constraints(in.acc)) out << c.to_string() << '\n';
  }
  const MembershipReport rep = in_capacity_region(in.acc, in.rates);
  if (rep.pairwise_vacuous) out << "note: single user, only cutset bounds apply\n";
  if (rep.in_region) {
    out << "in region\n";
    return kExitOk;
  }
  const Constraint& c = *rep.violated;
  out << "outside region: violates " << c.to_string();
  if (c.kind == Constraint::Kind::kPairwise) {
    out << " (pairwise, witness user " << *c.witness + 1 << ")";
  } else {
    out << " (cutset S = " << one_based(c.users) << ")";
  }
  out << '\n';
  return kExitFailure;
}

// --- plan ----------------------------------------------------------------

bool integral(const RateTuple& r) {
  return std::all_of(r.begin(), r.end(), [](const Rate& q) { return q.denominator() == 1; });
}

CompositeScheme plan_instance(const Instance& in, std::uint64_t seed) {
  if (in.corners) {
    const Corners& c = *in.corners;
    const Plan a = make_plan(in.field, in.acc, c.first, seed);
    const Plan b = make_plan(in.field, in.acc, c.second, seed + 1);
    return memory_share(a, b, c.first_blocks, c.blocks);
  }
  if (integral(in.rates)) {
    return CompositeScheme({Segment{make_plan(in.field, in.acc, to_int_rates(in.rates), seed), 1}});
  }
  return plan_rational(in.field, in.acc, in.rates, seed);
}

int cmd_plan(const Options& o, std::ostream& out) {
  const Instance in = parse_instance(read_json(o.instance));
  const std::uint64_t seed = o.seed.value_or(in.seed.value_or(kDefaultSeed));
  emit(o, out, scheme_to_json(plan_instance(in, seed)));
  return kExitOk;
}

// --- encode / decode -----------------------------------------------------

int cmd_encode(const Options& o, std::ostream& out) {
  const CompositeScheme scheme = scheme_from_json(read_json(o.plan));
  const MessageSet msgs = messages_from_json(read_json(o.messages), scheme.field());
  if (msgs.size() != scheme.users()) throw FormatError("message file lists the wrong number of users");
  for (std::size_t k = 0; k < scheme.users(); ++k) {
    if (msgs[k].size() != scheme.message_length(k)) {
      throw FormatError("message of user " + std::to_string(k + 1) + " needs " +
                        std::to_string(scheme.message_length(k)) + " symbols");
    }
  }
  CompositeEncoding enc = encode(scheme, msgs, o.seed.value_or(kDefaultSeed));
  ShareFile file;
  for (std::size_t n = 0; n < scheme.access().nodes(); ++n) file.nodes.push_back(n);
  file.shares = std::move(enc.shares);
  if (o.audit) file.pads = std::move(enc.pads);
  emit(o, out, shares_to_json(file));
  return kExitOk;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const CompositeScheme scheme = scheme_from_json(read_json(o.plan));
  const ShareFile file = shares_from_json(read_json(o.shares), scheme.field());
  if (o.user == 0 || o.user > scheme.users()) throw FormatError("--user must name a user 1..K");
  const std::size_t k = o.user - 1;
  NodeBlocks view;
  for (std::size_t n : scheme.access().set(k)) {
    const auto it = std::find(file.nodes.begin(), file.nodes.end(), n);
    if (it == file.nodes.end()) {
      throw FormatError("share file lacks node " + std::to_string(n + 1) + " of user " + std::to_string(o.user));
    }
    view.push_back(file.shares[static_cast<std::size_t>(it - file.nodes.begin())]);
  }
  const gf::Vector w = decode(scheme, k, view);
  json msg = json::array();
  for (auto e : w) msg.push_back(e.value);
  emit(o, out, json{{"format", "dmuss-message"}, {"user", o.user}, {"message", msg}});
  return kExitOk;
}

// --- verify --------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const CompositeScheme scheme = scheme_from_json(read_json(o.plan));
  const bool any = o.privacy || o.entropy || o.roundtrip || o.brute_force;
  const bool privacy = o.privacy || !any;
  const bool entropy = o.entropy || !any;
  const bool roundtrip = o.roundtrip || !any;
  const std::uint64_t seed = o.seed.value_or(kDefaultSeed);
  bool ok = true;
  auto verdict = [&](bool pass) {
    ok = ok && pass;
    return pass ? "ok" : "FAILED";
  };

  std::size_t index = 0;
  for (const auto& seg : scheme.segments()) {
    const Plan& plan = seg.plan;
    ++index;
    out << "segment " << index << " (rates";
    for (std::size_t r : plan.rates) out << ' ' << r;
    out << ", " << seg.blocks << " block" << (seg.blocks == 1 ? "" : "s") << ")\n";
    if (privacy) {
      const PrivacyReport rep = check_privacy(plan);
      out << "  privacy: " << verdict(rep.all_private()) << " (" << rep.pairs.size() << " ordered pairs)\n";
      for (const auto& p : rep.pairs) {
        if (!p.is_private()) {
          out << "    user " << p.observer + 1 << " learns " << p.leakage() << " symbol(s) of W_" << p.owner + 1 << '\n';
        }
      }
    }
    if (entropy) {
      const EntropyReport rep = check_entropy(plan);
      out << "  entropy: " << verdict(rep.full()) << " (rank " << rep.rank << " of " << rep.nodes << ")\n";
    }
    if (roundtrip) {
      const CorrectnessReport rep = check_correctness(plan, o.trials, seed + index);
      out << "  roundtrip: " << verdict(rep.exact()) << " (" << rep.failures << " of " << rep.trials
          << " trials failed)\n";
    }
    if (o.brute_force) {
      const AuditReport rep = brute_force_audit(plan);
      const bool pass = rep.bijective && rep.all_private() && rep.all_decodable() && rep.round_trip;
      out << "  brute-force: " << verdict(pass) << " (" << rep.points << " inputs; bijective "
          << rep.bijective << ", independent " << rep.all_private() << ", decodable "
          << rep.all_decodable() << ")\n";
    }
  }
  if (roundtrip && scheme.segments().size() > 1) {
    std::size_t failures = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const MessageSet msgs = random_messages(scheme, seed + t);
      const CompositeEncoding enc = encode(scheme, msgs, seed + t);
      for (std::size_t k = 0; k < scheme.users(); ++k) {
        NodeBlocks view;
        for (std::size_t n : scheme.access().set(k)) view.push_back(enc.shares[n]);
        if (decode(scheme, k, view) != msgs[k]) {
          ++failures;
          break;
        }
      }
    }
    out << "composite roundtrip: " << verdict(failures == 0) << " (" << failures << " of " << o.trials
        << " trials failed)\n";
  }
  out << (ok ? "all checks passed\n" : "some checks failed\n");
  return ok ? kExitOk : kExitFailure;
}

// --- demo ----------------------------------------------------------------

int cmd_demo(const Options& o, std::ostream& out) {
  const Plan plan = worked_example::plan();
  const gf::Field& f = plan.field;
  check_plan(plan);
  out << "GF(" << f.modulus() << "), gamma = " << f.gamma().value << ", N = " << plan.nodes() << '\n';
  for (std::size_t k = 0; k < plan.users(); ++k) {
    out << "A_" << k + 1 << " = " << one_based(plan.acc.set(k)) << "  R = " << plan.rates[k]
        << "  R' = " << plan.rprime[k] << '\n';
  }

  const linalg::Matrix a = placement_matrix(plan);
  std::size_t row = 0;
  std::size_t col = 0;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    const std::size_t sz = plan.acc.set(k).size();
    linalg::Matrix block(sz, plan.tail_length(k));
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t t = 0; t < block.cols(); ++t) block(i, t) = a(row + i, col + t);
    out << "\nB_" << k + 1 << ":\n";
    print_matrix(out, block);
    out << "V^(" << k + 1 << "):\n";
    print_matrix(out, null_basis(f, sz, plan.rprime[k]));
    out << "pi*_" << k + 1 << " = (";
    for (std::size_t i = 0; i < sz; ++i) out << (i ? "," : "") << plan.perms[k][i] + 1;
    out << ")  Z*_" << k + 1 << " = " << one_based(plan.zstar.zstar[k]) << '\n';
    row += sz;
    col += plan.tail_length(k);
  }

  const VPiDecomposition dec = build_vpi(plan);
  out << "\nV^(pi*):\n";
  print_matrix(out, dec.vpi);
  out << "det = " << linalg::det(f, dec.vpi).value << '\n';

  const MessageSet msgs = worked_example::messages();
  const Encoding enc = encode_with_pads(plan, msgs, random_pads(plan, 0));
  out << "\nb = " << join(enc.b) << '\n';
  out << "Y = " << join(enc.y) << '\n';
  for (std::size_t k = 0; k < plan.users(); ++k) {
    const Decoded d = decode(plan, k, restrict_to(plan.acc, k, enc.y));
    gf::Vector b = d.w_hat;
    b.insert(b.end(), d.p_hat.begin(), d.p_hat.end());
    out << "user " << k + 1 << ": b_" << k + 1 << " = " << join(b) << "  w_hat = " << join(d.w_hat)
        << (d.w_hat == msgs[k] ? "  (matches)" : "  (MISMATCH)") << '\n';
  }

  if (!o.out.empty()) {
    const fs::path dir(o.out);
    fs::create_directories(dir);
    const CompositeScheme scheme({Segment{plan, 1}});
    write_json(dir / "plan.json", scheme_to_json(scheme));
    write_json(dir / "messages.json", messages_to_json(msgs));
    ShareFile file;
    for (std::size_t n = 0; n < plan.nodes(); ++n) {
      file.nodes.push_back(n);
      file.shares.push_back({enc.y[n]});
    }
    write_json(dir / "shares.json", shares_to_json(file));
    out << "\nwrote plan.json, messages.json, shares.json to " << dir.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed multi-user secret sharing: plan, place and retrieve shares."};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Test an instance's rates against the capacity region");
  check->add_option("instance", o.instance, "Instance JSON file")->required();
  check->add_flag("--list", o.list, "Print every capacity inequality first");

  auto* plan = app.add_subcommand(
      "plan",
      "Build a plan for an instance.\n"
      "Rational rates are mixed from two integer corners when the instance gives\n"
      "\"corners\"; otherwise rates are scaled by their common denominator d and\n"
      "split into d integer tuples, one per stored symbol block.");
  plan->add_option("instance", o.instance, "Instance JSON file")->required();

  auto* enc = app.add_subcommand("encode", "Place messages into node shares");
  enc->add_option("plan", o.plan, "Plan JSON file")->required();
  enc->add_option("messages", o.messages, "Message JSON file")->required();
  enc->add_flag("--audit", o.audit, "Also record the secret pad randomness");

  auto* dec = app.add_subcommand("decode", "Recover one user's message from its shares");
  dec->add_option("plan", o.plan, "Plan JSON file")->required();
  dec->add_option("shares", o.shares, "Share JSON file (all nodes or just A_k)")->required();
  dec->add_option("--user", o.user, "User index, 1-based")->required();

  auto* ver = app.add_subcommand("verify", "Check privacy, entropy and round trip of a plan");
  ver->add_option("plan", o.plan, "Plan JSON file")->required();
  ver->add_flag("--privacy", o.privacy, "Pairwise privacy via the rank condition");
  ver->add_flag("--entropy", o.entropy, "Full rank of the transfer map");
  ver->add_flag("--roundtrip", o.roundtrip, "Random encode/decode trials");
  ver->add_flag("--brute-force", o.brute_force, "Exhaustive audit (tiny fields only)");
  ver->add_option("--trials", o.trials, "Round-trip trials")->capture_default_str();

  auto* demo = app.add_subcommand("demo", "Run the built-in GF(11) example and print every step");

  for (auto* sub : {plan, enc, ver}) sub->add_option("--seed", o.seed, "Random seed");
  for (auto* sub : {plan, enc, dec, demo}) sub->add_option("--out", o.out, "Output file (directory for demo)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: Usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (plan->parsed()) return cmd_plan(o, out);
    if (enc->parsed()) return cmd_encode(o, out);
    if (dec->parsed()) return cmd_decode(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    return cmd_demo(o, out);
  } catch (const FormatError& e) {
    err << "error: Parse: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: IO: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dmuss::cli

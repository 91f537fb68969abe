#include "dmuss/cli/files.hpp"

#include <fstream>

#include "dmuss/error.hpp"

namespace dmuss::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    fail(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<std::size_t> as_index_list(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(as_uint(v, what));
  return out;
}

std::vector<std::vector<std::size_t>> as_index_lists(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<std::size_t>> out;
  for (const auto& v : j) out.push_back(as_index_list(v, what));
  return out;
}

gf::Vector as_symbols(const json& j, const gf::Field& f, const char* what) {
  gf::Vector out;
  for (std::size_t v : as_index_list(j, what)) {
    if (v >= f.modulus()) fail(std::string(what) + " holds a value outside [0, p)");
    out.push_back(gf::Element{static_cast<std::uint32_t>(v)});
  }
  return out;
}

json symbols(const gf::Vector& v) {
  json out = json::array();
  for (auto e : v) out.push_back(e.value);
  return out;
}

std::vector<std::size_t> to_zero_based(std::vector<std::size_t> v, const char* what) {
  for (auto& x : v) {
    if (x == 0) fail(std::string(what) + " are 1-based");
    --x;
  }
  return v;
}

gf::Field field_from(const json& j) {
  const std::uint64_t p = as_uint(require(j, "p"), "p");
  if (j.contains("gamma")) return gf::Field(p, as_uint(j.at("gamma"), "gamma"));
  return gf::Field(p);
}

AccessStructure access_from(const json& j) {
  auto sets = as_index_lists(require(j, "access"), "access sets");
  std::vector<NodeSet> zero;
  for (auto& s : sets) {
    auto z = to_zero_based(s, "access set nodes");
    std::sort(z.begin(), z.end());
    zero.push_back(std::move(z));
  }
  if (j.contains("nodes")) return AccessStructure(std::move(zero), as_uint(j.at("nodes"), "nodes"));
  return AccessStructure(std::move(zero));
}

IntRates int_rates(const json& j, const char* what) {
  const auto v = as_index_list(j, what);
  return IntRates(v.begin(), v.end());
}

// Wraps library validation failures met while loading as format errors.
template <typename F>
auto loading(F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw FormatError(std::string(errc_name(e.code())) + ": " + e.what());
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Rate parse_rate(const json& j) {
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) fail("rates must be non-negative");
    return Rate(j.get<std::int64_t>());
  }
  if (!j.is_string()) fail("rate must be an integer or a \"num/den\" string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size()) fail("bad rate \"" + s + "\"");
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      const std::string d = s.substr(slash + 1);
      den = std::stoll(d, &used);
      if (used != d.size()) fail("bad rate \"" + s + "\"");
    }
    if (den <= 0 || num < 0) fail("bad rate \"" + s + "\"");
    return Rate(num, den);
  } catch (const std::logic_error&) {
    fail("bad rate \"" + s + "\"");
  }
}

std::string format_rate(const Rate& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Instance parse_instance(const json& j) {
  return loading([&] {
    Instance in{field_from(j), access_from(j), {}, std::nullopt, std::nullopt};
    const json& rates = require(j, "rates");
    if (!rates.is_array() || rates.size() != in.acc.users()) fail("need one rate per access set");
    for (const auto& r : rates) in.rates.push_back(parse_rate(r));
    if (j.contains("seed")) in.seed = as_uint(j.at("seed"), "seed");
    if (j.contains("corners")) {
      const json& c = j.at("corners");
      Corners corners{int_rates(require(c, "first"), "first corner"),
                      int_rates(require(c, "second"), "second corner"), 0, 1};
      const Rate w = parse_rate(require(c, "weight"));
      if (w > Rate(1)) fail("corner weight must lie in [0, 1]");
      corners.first_blocks = static_cast<std::size_t>(w.numerator());
      corners.blocks = static_cast<std::size_t>(w.denominator());
      if (corners.first.size() != in.acc.users() || corners.second.size() != in.acc.users()) {
        fail("corners need one rate per access set");
      }
      for (std::size_t k = 0; k < in.acc.users(); ++k) {
        const Rate mixed = w * Rate(static_cast<std::int64_t>(corners.first[k])) +
                           (Rate(1) - w) * Rate(static_cast<std::int64_t>(corners.second[k]));
        if (mixed != in.rates[k]) fail("corners do not mix to the requested rates");
      }
      in.corners = std::move(corners);
    }
    return in;
  });
}

json plan_to_json(const Plan& plan) {
  json j;
  j["rates"] = plan.rates;
  j["rprime"] = plan.rprime;
  json anchors = json::array();
  for (const auto& z : plan.zstar.zstar) {
    json a = json::array();
    for (std::size_t n : z) a.push_back(n + 1);
    anchors.push_back(a);
  }
  j["anchors"] = anchors;
  json exps = json::array();
  for (const auto& perm : plan.perms) {
    json e = json::array();
    for (std::size_t v : perm) e.push_back(v + 1);
    exps.push_back(e);
  }
  j["gamma_exponents"] = exps;
  json alphas = json::array();
  for (const auto& a : plan.alphas) alphas.push_back(symbols(a));
  j["alphas"] = alphas;
  return j;
}

json scheme_to_json(const CompositeScheme& scheme) {
  json j;
  j["format"] = "dmuss-plan";
  j["version"] = 1;
  j["p"] = scheme.field().modulus();
  j["gamma"] = scheme.field().gamma().value;
  j["nodes"] = scheme.access().nodes();
  j["access"] = scheme.access().to_one_based();
  json segs = json::array();
  for (const auto& s : scheme.segments()) {
    json seg = plan_to_json(s.plan);
    seg["blocks"] = s.blocks;
    segs.push_back(seg);
  }
  j["segments"] = segs;
  return j;
}

CompositeScheme scheme_from_json(const json& j) {
  return loading([&] {
    if (!j.is_object() || j.value("format", "") != "dmuss-plan") fail("not a plan file");
    const gf::Field f = field_from(j);
    const AccessStructure acc = access_from(j);
    std::vector<Segment> segs;
    for (const auto& s : require(j, "segments")) {
      Plan plan{f, acc, int_rates(require(s, "rates"), "rates"),
                int_rates(require(s, "rprime"), "rprime"), {}, {}, {}};
      for (const auto& a : as_index_lists(require(s, "anchors"), "anchors")) {
        auto z = to_zero_based(a, "anchors");
        std::sort(z.begin(), z.end());
        plan.zstar.zstar.push_back(std::move(z));
      }
      for (const auto& e : as_index_lists(require(s, "gamma_exponents"), "gamma_exponents")) {
        plan.perms.push_back(to_zero_based(e, "gamma exponents"));
      }
      for (const auto& a : require(s, "alphas")) plan.alphas.push_back(as_symbols(a, f, "alphas"));
      check_plan(plan);
      segs.push_back(Segment{std::move(plan), as_uint(require(s, "blocks"), "blocks")});
    }
    return CompositeScheme(std::move(segs));
  });
}

json messages_to_json(const MessageSet& msgs) {
  json arr = json::array();
  for (const auto& w : msgs) arr.push_back(symbols(w));
  return json{{"format", "dmuss-messages"}, {"messages", arr}};
}

MessageSet messages_from_json(const json& j, const gf::Field& f) {
  return loading([&] {
    MessageSet msgs;
    const json& arr = require(j, "messages");
    if (!arr.is_array()) fail("messages must be an array");
    for (const auto& w : arr) msgs.push_back(as_symbols(w, f, "message symbols"));
    return msgs;
  });
}

json shares_to_json(const ShareFile& s) {
  json j;
  j["format"] = "dmuss-shares";
  json nodes = json::array();
  for (std::size_t n : s.nodes) nodes.push_back(n + 1);
  j["nodes"] = nodes;
  json shares = json::array();
  for (const auto& b : s.shares) shares.push_back(symbols(b));
  j["shares"] = shares;
  if (s.pads) {
    json pads = json::array();
    for (const auto& p : *s.pads) {
      json rnd = json::array();
      json tail = json::array();
      for (const auto& v : p.random) rnd.push_back(symbols(v));
      for (const auto& v : p.tail) tail.push_back(symbols(v));
      pads.push_back(json{{"random", rnd}, {"tail", tail}});
    }
    j["pads"] = pads;
  }
  return j;
}

ShareFile shares_from_json(const json& j, const gf::Field& f) {
  return loading([&] {
    ShareFile s;
    for (const auto& b : require(j, "shares")) s.shares.push_back(as_symbols(b, f, "shares"));
    if (j.contains("nodes")) {
      s.nodes = to_zero_based(as_index_list(j.at("nodes"), "share nodes"), "share nodes");
      if (s.nodes.size() != s.shares.size()) fail("share nodes and blocks differ in length");
    } else {
      for (std::size_t n = 0; n < s.shares.size(); ++n) s.nodes.push_back(n);
    }
    return s;
  });
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dmuss::cli

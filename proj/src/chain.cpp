#include "gsift/chain.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsift {

namespace {

[[noreturn]] void fail(const std::string& origin, size_t line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

uint64_t parse_u64(const std::string& origin, size_t line, const std::string& tok) {
  try {
    size_t used = 0;
    uint64_t v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "expected a nonnegative integer, got '" + tok + "'");
  }
}

int64_t parse_i64(const std::string& origin, size_t line, const std::string& tok) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "expected an integer, got '" + tok + "'");
  }
}

Rational parse_rational(const std::string& origin, size_t line, const std::string& tok) {
  try {
    return Rational::parse(tok);
  } catch (const std::exception& e) {
    fail(origin, line, std::string("bad rational '") + tok + "': " + e.what());
  }
}

std::vector<uint64_t> parse_u64_list(const std::string& origin, size_t line,
                                     const std::string& tok) {
  std::vector<uint64_t> out;
  std::string part;
  std::istringstream in(tok);
  while (std::getline(in, part, ','))
    out.push_back(parse_u64(origin, line, part));
  if (out.empty()) fail(origin, line, "empty integer list");
  return out;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& n : names) {
    if (!out.empty()) out += ' ';
    out += n;
  }
  return out;
}

std::string join_u64(const std::vector<uint64_t>& xs) {
  std::string out;
  for (uint64_t x : xs) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::random_search: return "random";
    case Strategy::coset_reps: return "coset-reps";
    case Strategy::exhaustive: return "exhaustive";
  }
  return "?";
}

const char* cert_name(CertKind c) {
  switch (c) {
    case CertKind::none: return "none";
    case CertKind::tsets: return "tsets";
    case CertKind::collapse: return "collapse";
    case CertKind::direct: return "direct";
  }
  return "?";
}

}  // namespace

ChainSpec parse_chain_spec(const std::string& text, const std::string& origin) {
  ChainSpec spec;
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  enum class Mode { header, tape, step };
  Mode mode = Mode::header;
  bool have_name = false, have_group = false, have_slots = false, have_tape = false;
  StepSpec step;
  bool step_has_p = false, step_has_sampler = false;

  auto resolvable = [&spec](const std::string& name) {
    if (name == "identity") return true;
    for (const DefSpec& d : spec.defs)
      if (d.name == name) return true;
    return false;
  };
  auto need_names = [&](size_t ln, const std::vector<std::string>& names, const char* what) {
    if (names.empty()) fail(origin, ln, std::string(what) + " needs at least one name");
    for (const std::string& n : names)
      if (!resolvable(n)) fail(origin, ln, std::string(what) + " references unknown name '" + n + "'");
  };

  for (size_t i = 0; i < lines.size(); ++i) {
    size_t ln = i + 1;
    std::vector<std::string> tok = tokenize(lines[i]);
    if (tok.empty()) continue;
    const std::string& key = tok[0];

    if (mode == Mode::tape) {
      uint32_t bound = spec.slots + static_cast<uint32_t>(spec.tape.size());
      auto operand = [&](const std::string& t) {
        uint64_t v = parse_u64(origin, ln, t);
        if (v >= bound)
          fail(origin, ln, "operand " + t + " out of range (have " + std::to_string(bound) +
                               " values so far)");
        return static_cast<uint32_t>(v);
      };
      if (key == "end") {
        mode = Mode::header;
      } else if (key == "mul" && tok.size() == 3) {
        spec.tape.push_back({SlpOp::Kind::mul, operand(tok[1]), operand(tok[2]), 0});
      } else if (key == "inv" && tok.size() == 2) {
        spec.tape.push_back({SlpOp::Kind::inv, operand(tok[1]), 0, 0});
      } else if (key == "pow" && tok.size() == 3) {
        spec.tape.push_back({SlpOp::Kind::pow, operand(tok[1]), 0, parse_i64(origin, ln, tok[2])});
      } else {
        fail(origin, ln, "bad tape line '" + key + "' (want mul/inv/pow/end)");
      }
      continue;
    }

    if (mode == Mode::step) {
      if (key == "end") {
        if (!step_has_p) fail(origin, ln, "step is missing its p line");
        if (step.strategy == Strategy::random_search) {
          if (!step_has_sampler) fail(origin, ln, "random step is missing its sampler line");
          if (!step.candidates.empty()) fail(origin, ln, "random step cannot list candidates");
          if (step.tests.empty()) fail(origin, ln, "random step needs a test");
        } else {
          if (step_has_sampler) fail(origin, ln, "only random steps take a sampler");
          if (step.candidates.empty())
            fail(origin, ln, "coset-reps and exhaustive steps need candidates");
          if (step.strategy == Strategy::coset_reps && step.tests.empty())
            fail(origin, ln, "coset-reps step needs a test");
          if (step.strategy == Strategy::exhaustive && !step.tests.empty())
            fail(origin, ln, "exhaustive step matches stored elements; it takes no test");
        }
        spec.stages.back().push_back(static_cast<uint32_t>(spec.steps.size()));
        spec.steps.push_back(step);
        step = StepSpec{};
        step_has_p = step_has_sampler = false;
        mode = Mode::header;
      } else if (key == "strategy" && tok.size() == 2) {
        if (tok[1] == "random") step.strategy = Strategy::random_search;
        else if (tok[1] == "coset-reps") step.strategy = Strategy::coset_reps;
        else if (tok[1] == "exhaustive") step.strategy = Strategy::exhaustive;
        else fail(origin, ln, "unknown strategy '" + tok[1] + "'");
      } else if (key == "p" && tok.size() == 2) {
        step.p = parse_rational(origin, ln, tok[1]);
        if (!(step.p > Rational(0)) || step.p > Rational(1))
          fail(origin, ln, "p must lie in (0, 1], got " + step.p.str());
        step_has_p = true;
      } else if (key == "sampler" && tok.size() >= 2) {
        step_has_sampler = true;
        if (tok[1] == "group") {
          if (tok.size() != 2) fail(origin, ln, "sampler group takes no names");
          step.sampler.kind = SamplerSpec::Kind::group;
        } else if (tok[1] == "subgroup") {
          step.sampler.kind = SamplerSpec::Kind::subgroup;
          size_t j = 2;
          for (; j < tok.size() && tok[j] != "translate"; ++j) step.sampler.gens.push_back(tok[j]);
          if (j < tok.size()) {
            for (++j; j < tok.size(); ++j) step.sampler.translate.push_back(tok[j]);
            need_names(ln, step.sampler.translate, "sampler translate");
          }
          need_names(ln, step.sampler.gens, "sampler subgroup");
        } else {
          fail(origin, ln, "sampler must be 'group' or 'subgroup ...'");
        }
      } else if (key == "candidates") {
        step.candidates.assign(tok.begin() + 1, tok.end());
        need_names(ln, step.candidates, "candidates");
      } else if (key == "test" && tok.size() >= 2) {
        TestLine t;
        size_t j = 1;
        if (tok[j] == "conj") {
          if (tok.size() < 4) fail(origin, ln, "test conj needs a name and a test kind");
          t.conj = tok[j + 1];
          if (!resolvable(t.conj)) fail(origin, ln, "unknown name '" + t.conj + "'");
          j += 2;
        }
        t.kind = tok[j++];
        if (t.kind == "centralizer" || t.kind == "any-centralizer" || t.kind == "stored-set") {
          t.witnesses.assign(tok.begin() + j, tok.end());
          need_names(ln, t.witnesses, t.kind.c_str());
        } else if (t.kind == "cyclic-normalizer") {
          if (tok.size() != j + 2) fail(origin, ln, "cyclic-normalizer takes a name and an order");
          t.witnesses = {tok[j]};
          need_names(ln, t.witnesses, t.kind.c_str());
          t.order = parse_u64(origin, ln, tok[j + 1]);
          if (t.order < 2) fail(origin, ln, "cyclic-normalizer order must be at least 2");
        } else if (t.kind == "normalizer") {
          size_t k = j;
          for (; k < tok.size() && tok[k] != "set"; ++k) t.witnesses.push_back(tok[k]);
          if (k >= tok.size()) fail(origin, ln, "normalizer test needs 'set <names...>'");
          t.members.assign(tok.begin() + k + 1, tok.end());
          need_names(ln, t.witnesses, "normalizer");
          need_names(ln, t.members, "normalizer set");
        } else if (t.kind == "orders") {
          if (j >= tok.size()) fail(origin, ln, "orders test needs an order list");
          t.orders = parse_u64_list(origin, ln, tok[j++]);
          if (j + 1 >= tok.size() || tok[j] != "p0")
            fail(origin, ln, "orders test needs 'p0 <rational>'");
          t.p0 = parse_rational(origin, ln, tok[j + 1]);
          if (!(t.p0 > Rational(0)) || t.p0 > Rational(1))
            fail(origin, ln, "p0 must lie in (0, 1], got " + t.p0.str());
          j += 2;
          if (j >= tok.size() || tok[j] != "kgens")
            fail(origin, ln, "orders test needs 'kgens <names...>'");
          t.kgens.assign(tok.begin() + j + 1, tok.end());
          need_names(ln, t.kgens, "kgens");
        } else {
          fail(origin, ln, "unknown test kind '" + t.kind + "'");
        }
        step.tests.push_back(std::move(t));
      } else if (key == "shortcut" && tok.size() == 5 && tok[3] == "resume") {
        Shortcut s;
        s.pattern = static_cast<int>(parse_u64(origin, ln, tok[1]));
        s.correction = tok[2];
        if (!resolvable(s.correction))
          fail(origin, ln, "unknown correction name '" + s.correction + "'");
        s.resume = static_cast<uint32_t>(parse_u64(origin, ln, tok[4]));
        if (s.resume == 0) fail(origin, ln, "resume step numbers are 1-based");
        step.shortcuts.push_back(std::move(s));
      } else if (key == "cert" && tok.size() == 2) {
        if (tok[1] == "none") step.cert = CertKind::none;
        else if (tok[1] == "tsets") step.cert = CertKind::tsets;
        else if (tok[1] == "collapse") step.cert = CertKind::collapse;
        else if (tok[1] == "direct") step.cert = CertKind::direct;
        else fail(origin, ln, "unknown cert kind '" + tok[1] + "'");
      } else if (key == "subgroup") {
        step.subgroup.assign(tok.begin() + 1, tok.end());
        need_names(ln, step.subgroup, "subgroup");
      } else if (key == "tsize" && tok.size() == 2) {
        step.tsize = parse_u64(origin, ln, tok[1]);
        if (step.tsize == 0) fail(origin, ln, "tsize must be positive");
      } else {
        fail(origin, ln, "bad step line '" + key + "'");
      }
      continue;
    }

    // header mode
    if (key == "chain" && tok.size() == 2) {
      if (have_name) fail(origin, ln, "duplicate chain line");
      spec.name = tok[1];
      have_name = true;
    } else if (key == "group" && tok.size() == 2) {
      if (have_group) fail(origin, ln, "duplicate group line");
      spec.group_label = tok[1];
      have_group = true;
    } else if (key == "slots" && tok.size() == 2) {
      if (have_slots) fail(origin, ln, "duplicate slots line");
      uint64_t v = parse_u64(origin, ln, tok[1]);
      if (v == 0) fail(origin, ln, "slots must be positive");
      spec.slots = static_cast<uint32_t>(v);
      have_slots = true;
    } else if (key == "t0") {
      if (tok.size() != 2 || tok[1] != "identity")
        fail(origin, ln, "the zeroth refinement set must be exactly {identity}");
    } else if (key == "tape") {
      if (!have_slots) fail(origin, ln, "tape requires slots first");
      if (have_tape) fail(origin, ln, "duplicate tape block");
      have_tape = true;
      mode = Mode::tape;
    } else if (key == "def" && (tok.size() == 3 || tok.size() == 5)) {
      if (!have_slots) fail(origin, ln, "def requires slots first");
      DefSpec d;
      d.name = tok[1];
      if (d.name == "identity") fail(origin, ln, "'identity' is reserved");
      if (resolvable(d.name)) fail(origin, ln, "duplicate definition '" + d.name + "'");
      uint64_t op = parse_u64(origin, ln, tok[2]);
      uint32_t bound = spec.slots + static_cast<uint32_t>(spec.tape.size());
      if (op >= bound) fail(origin, ln, "operand " + tok[2] + " out of range");
      d.operand = static_cast<uint32_t>(op);
      if (tok.size() == 5) {
        if (tok[3] != "order") fail(origin, ln, "expected 'order', got '" + tok[3] + "'");
        d.order = parse_u64(origin, ln, tok[4]);
        if (d.order == 0) fail(origin, ln, "order claims must be positive");
      }
      spec.defs.push_back(std::move(d));
    } else if (key == "conjugator" && tok.size() == 2) {
      if (!spec.conjugator.empty()) fail(origin, ln, "duplicate conjugator line");
      if (!resolvable(tok[1])) fail(origin, ln, "unknown name '" + tok[1] + "'");
      spec.conjugator = tok[1];
    } else if (key == "stage" && tok.size() == 1) {
      spec.stages.emplace_back();
    } else if (key == "step" && tok.size() == 1) {
      if (spec.stages.empty()) fail(origin, ln, "step outside any stage");
      mode = Mode::step;
    } else {
      fail(origin, ln, "bad line '" + key + "'");
    }
  }

  if (mode != Mode::header) fail(origin, lines.size(), "unterminated block at end of file");
  if (!have_name) fail(origin, lines.size(), "missing chain line");
  if (!have_group) fail(origin, lines.size(), "missing group line");
  if (!have_slots) fail(origin, lines.size(), "missing slots line");
  if (spec.steps.empty()) fail(origin, lines.size(), "chain has no steps");
  for (const std::vector<uint32_t>& stage : spec.stages)
    if (stage.empty()) fail(origin, lines.size(), "empty stage");
  for (size_t si = 0; si < spec.steps.size(); ++si)
    for (const Shortcut& s : spec.steps[si].shortcuts)
      if (s.resume > spec.steps.size())
        throw std::runtime_error(origin + ": step " + std::to_string(si + 1) + " shortcut resumes at step " +
                                 std::to_string(s.resume) + " but the chain has only " +
                                 std::to_string(spec.steps.size()) + " steps");
  return spec;
}

ChainSpec load_chain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open chain file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_chain_spec(buf.str(), path);
}

std::string serialize_chain_spec(const ChainSpec& spec) {
  std::ostringstream out;
  out << "chain " << spec.name << "\n";
  out << "group " << spec.group_label << "\n";
  out << "slots " << spec.slots << "\n";
  if (!spec.tape.empty()) {
    out << "tape\n";
    for (const SlpOp& op : spec.tape) {
      switch (op.kind) {
        case SlpOp::Kind::mul: out << "mul " << op.a << " " << op.b << "\n"; break;
        case SlpOp::Kind::inv: out << "inv " << op.a << "\n"; break;
        case SlpOp::Kind::pow: out << "pow " << op.a << " " << op.e << "\n"; break;
      }
    }
    out << "end\n";
  }
  for (const DefSpec& d : spec.defs) {
    out << "def " << d.name << " " << d.operand;
    if (d.order) out << " order " << d.order;
    out << "\n";
  }
  if (!spec.conjugator.empty()) out << "conjugator " << spec.conjugator << "\n";
  for (const std::vector<uint32_t>& stage : spec.stages) {
    out << "stage\n";
    for (uint32_t si : stage) {
      const StepSpec& st = spec.steps[si];
      out << "step\n";
      out << "strategy " << strategy_name(st.strategy) << "\n";
      out << "p " << st.p.str() << "\n";
      if (st.strategy == Strategy::random_search) {
        if (st.sampler.kind == SamplerSpec::Kind::group) {
          out << "sampler group\n";
        } else {
          out << "sampler subgroup " << join(st.sampler.gens);
          if (!st.sampler.translate.empty()) out << " translate " << join(st.sampler.translate);
          out << "\n";
        }
      }
      if (!st.candidates.empty()) out << "candidates " << join(st.candidates) << "\n";
      for (const TestLine& t : st.tests) {
        out << "test ";
        if (!t.conj.empty()) out << "conj " << t.conj << " ";
        out << t.kind;
        if (t.kind == "cyclic-normalizer") {
          out << " " << t.witnesses[0] << " " << t.order;
        } else if (t.kind == "normalizer") {
          out << " " << join(t.witnesses) << " set " << join(t.members);
        } else if (t.kind == "orders") {
          out << " " << join_u64(t.orders) << " p0 " << t.p0.str() << " kgens " << join(t.kgens);
        } else {
          out << " " << join(t.witnesses);
        }
        out << "\n";
      }
      for (const Shortcut& s : st.shortcuts)
        out << "shortcut " << s.pattern << " " << s.correction << " resume " << s.resume << "\n";
      if (st.cert != CertKind::none) out << "cert " << cert_name(st.cert) << "\n";
      if (!st.subgroup.empty()) out << "subgroup " << join(st.subgroup) << "\n";
      if (st.tsize) out << "tsize " << st.tsize << "\n";
      out << "end\n";
    }
  }
  return out.str();
}

void save_chain_spec(const ChainSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write chain file: " + path);
  out << serialize_chain_spec(spec);
}

}  // namespace gsift

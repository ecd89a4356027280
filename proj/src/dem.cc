#include "qldpc/dem.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qldpc {

std::vector<double> DetectorModel::priors() const {
  std::vector<double> p;
  p.reserve(mechanisms.size());
  for (const auto& m : mechanisms) p.push_back(m.probability);
  return p;
}

DetectorModel make_detector_model(std::size_t num_detectors, std::size_t num_observables,
                                  std::vector<Mechanism> mechanisms) {
  DetectorModel model;
  model.num_detectors = num_detectors;
  model.num_observables = num_observables;
  model.checks = BinMatrix(num_detectors, mechanisms.size());
  model.observables = BinMatrix(num_observables, mechanisms.size());
  for (std::size_t j = 0; j < mechanisms.size(); ++j) {
    Mechanism& m = mechanisms[j];
    if (!(m.probability > 0.0 && m.probability <= 0.5)) {
      throw std::invalid_argument("mechanism " + std::to_string(j) + ": probability " +
                                  std::to_string(m.probability) + " outside (0, 0.5]");
    }
    std::sort(m.detectors.begin(), m.detectors.end());
    std::sort(m.observables.begin(), m.observables.end());
    if (std::adjacent_find(m.detectors.begin(), m.detectors.end()) != m.detectors.end() ||
        std::adjacent_find(m.observables.begin(), m.observables.end()) != m.observables.end()) {
      throw std::invalid_argument("mechanism " + std::to_string(j) + ": repeated target");
    }
    for (std::size_t d : m.detectors) {
      if (d >= num_detectors) {
        throw std::invalid_argument("mechanism " + std::to_string(j) + ": detector D" +
                                    std::to_string(d) + " out of range");
      }
      model.checks.set(d, j);
    }
    for (std::size_t o : m.observables) {
      if (o >= num_observables) {
        throw std::invalid_argument("mechanism " + std::to_string(j) + ": observable L" +
                                    std::to_string(o) + " out of range");
      }
      model.observables.set(o, j);
    }
  }
  model.mechanisms = std::move(mechanisms);
  return model;
}

namespace {

enum class TokKind { Name, Detector, Observable, Number, Caret, Open, Close };

struct Token {
  TokKind kind;
  std::string text;  // name, or raw number text
  std::string args;  // parenthesized arguments of a name
  long long value = 0;
  std::size_t line = 0;
};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

long long to_integer(std::string_view s, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DemParseError(line, "invalid integer '" + std::string(s) + "'");
  }
  return v;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  auto is_break = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == '(' ||
           c == '#' || c == '^';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '{' || c == '}' || c == '^') {
      out.push_back({c == '{' ? TokKind::Open : c == '}' ? TokKind::Close : TokKind::Caret,
                     std::string(1, c), "", 0, line});
      ++i;
    } else if (c == '(') {
      throw DemParseError(line, "unexpected '('");
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_break(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      Token tok{TokKind::Name, word, "", 0, line};
      if (i < text.size() && text[i] == '(') {
        std::size_t close = text.find(')', i);
        std::size_t nl = text.find('\n', i);
        if (close == std::string_view::npos || (nl != std::string_view::npos && nl < close)) {
          throw DemParseError(line, "unterminated argument list after '" + word + "'");
        }
        tok.args = std::string(text.substr(i + 1, close - i - 1));
        i = close + 1;
      } else if ((word[0] == 'D' || word[0] == 'd') && all_digits(word.substr(1))) {
        tok.kind = TokKind::Detector;
        tok.value = to_integer(std::string_view(word).substr(1), line);
      } else if ((word[0] == 'L' || word[0] == 'l') && all_digits(word.substr(1))) {
        tok.kind = TokKind::Observable;
        tok.value = to_integer(std::string_view(word).substr(1), line);
      } else if (all_digits(word) || (word[0] == '-' && all_digits(word.substr(1)))) {
        tok.kind = TokKind::Number;
        tok.value = to_integer(word, line);
      }
      out.push_back(std::move(tok));
    }
  }
  return out;
}

struct Instruction {
  std::string name;
  std::string args;
  std::vector<Token> targets;
  std::vector<Instruction> body;  // repeat blocks
  std::size_t line = 0;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<Instruction> parse_block(const std::vector<Token>& toks, std::size_t& pos,
                                     bool nested) {
  std::vector<Instruction> block;
  while (pos < toks.size()) {
    const Token& head = toks[pos];
    if (head.kind == TokKind::Close) {
      if (!nested) throw DemParseError(head.line, "unmatched '}'");
      ++pos;
      return block;
    }
    if (head.kind != TokKind::Name) {
      throw DemParseError(head.line, "expected an instruction, found '" + head.text + "'");
    }
    Instruction inst{lower(head.text), head.args, {}, {}, head.line};
    if (inst.name != "error" && inst.name != "detector" && inst.name != "logical_observable" &&
        inst.name != "shift_detectors" && inst.name != "repeat") {
      throw DemParseError(head.line, "unknown instruction '" + head.text + "'");
    }
    ++pos;
    while (pos < toks.size() && toks[pos].kind != TokKind::Name &&
           toks[pos].kind != TokKind::Open && toks[pos].kind != TokKind::Close) {
      inst.targets.push_back(toks[pos++]);
    }
    if (inst.name == "repeat") {
      if (pos >= toks.size() || toks[pos].kind != TokKind::Open) {
        throw DemParseError(head.line, "repeat requires a '{' block");
      }
      ++pos;
      inst.body = parse_block(toks, pos, true);
    } else if (pos < toks.size() && toks[pos].kind == TokKind::Open) {
      throw DemParseError(toks[pos].line, "unexpected '{'");
    }
    block.push_back(std::move(inst));
  }
  if (nested) throw DemParseError(toks.empty() ? 1 : toks.back().line, "missing '}'");
  return block;
}

double parse_probability(const Instruction& inst) {
  std::string a = inst.args;
  auto first = a.find_first_not_of(" \t");
  auto last = a.find_last_not_of(" \t");
  if (first == std::string::npos) throw DemParseError(inst.line, "error requires a probability");
  a = a.substr(first, last - first + 1);
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), p);
  if (ec != std::errc() || ptr != a.data() + a.size()) {
    throw DemParseError(inst.line, "malformed probability '" + a + "'");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DemParseError(inst.line, "probability " + a + " outside [0, 1]");
  }
  if (p >= 0.5) {
    throw DemParseError(inst.line, "probability " + a + " >= 0.5 is not decodable");
  }
  return p;
}

struct Flattener {
  std::size_t offset = 0;
  std::size_t num_detectors = 0;
  std::size_t num_observables = 0;
  std::vector<Mechanism> mechanisms;

  std::size_t detector_id(const Token& t) {
    if (t.value < 0) throw DemParseError(t.line, "negative detector id");
    std::size_t id = offset + static_cast<std::size_t>(t.value);
    num_detectors = std::max(num_detectors, id + 1);
    return id;
  }
  std::size_t observable_id(const Token& t) {
    std::size_t id = static_cast<std::size_t>(t.value);
    num_observables = std::max(num_observables, id + 1);
    return id;
  }

  void run(const std::vector<Instruction>& block) {
    for (const Instruction& inst : block) {
      if (inst.name == "error") {
        double p = parse_probability(inst);
        std::vector<std::size_t> dets, obs;
        for (std::size_t i = 0; i < inst.targets.size(); ++i) {
          const bool caret = inst.targets[i].kind == TokKind::Caret;
          const bool dangling = i == 0 || i + 1 == inst.targets.size() ||
                                inst.targets[i - 1].kind == TokKind::Caret;
          if (caret && dangling) throw DemParseError(inst.targets[i].line, "dangling '^'");
        }
        for (const Token& t : inst.targets) {
          if (t.kind == TokKind::Detector) {
            toggle(dets, detector_id(t));
          } else if (t.kind == TokKind::Observable) {
            toggle(obs, observable_id(t));
          } else if (t.kind != TokKind::Caret) {
            throw DemParseError(t.line, "invalid error target '" + t.text + "'");
          }
        }
        if (p == 0.0 || (dets.empty() && obs.empty())) continue;
        std::sort(dets.begin(), dets.end());
        std::sort(obs.begin(), obs.end());
        mechanisms.push_back({p, std::move(dets), std::move(obs)});
      } else if (inst.name == "detector") {
        for (const Token& t : inst.targets) {
          if (t.kind != TokKind::Detector) {
            throw DemParseError(t.line, "detector expects D targets");
          }
          detector_id(t);
        }
      } else if (inst.name == "logical_observable") {
        for (const Token& t : inst.targets) {
          if (t.kind != TokKind::Observable) {
            throw DemParseError(t.line, "logical_observable expects L targets");
          }
          observable_id(t);
        }
      } else if (inst.name == "shift_detectors") {
        if (inst.targets.size() != 1 || inst.targets[0].kind != TokKind::Number) {
          throw DemParseError(inst.line, "shift_detectors expects one integer");
        }
        if (inst.targets[0].value < 0) throw DemParseError(inst.line, "negative detector shift");
        offset += static_cast<std::size_t>(inst.targets[0].value);
      } else if (inst.name == "repeat") {
        if (inst.targets.size() != 1 || inst.targets[0].kind != TokKind::Number ||
            inst.targets[0].value < 0) {
          throw DemParseError(inst.line, "repeat expects a non-negative count");
        }
        for (long long r = 0; r < inst.targets[0].value; ++r) run(inst.body);
      }
    }
  }

  static void toggle(std::vector<std::size_t>& set, std::size_t id) {
    auto it = std::find(set.begin(), set.end(), id);
    if (it == set.end()) {
      set.push_back(id);
    } else {
      set.erase(it);
    }
  }
};

}  // namespace

DetectorModel parse_dem(std::string_view text) {
  std::vector<Token> toks = tokenize(text);
  std::size_t pos = 0;
  std::vector<Instruction> program = parse_block(toks, pos, false);
  Flattener f;
  f.run(program);
  return make_detector_model(f.num_detectors, f.num_observables, std::move(f.mechanisms));
}

DetectorModel parse_dem_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Mechanism> mechanisms;
  for (const auto& m : j.at("mechanisms")) {
    Mechanism mech;
    mech.probability = m.at("p").get<double>();
    mech.detectors = m.value("detectors", std::vector<std::size_t>{});
    mech.observables = m.value("observables", std::vector<std::size_t>{});
    if (mech.probability == 0.0) continue;
    if (mech.probability >= 0.5) {
      throw std::invalid_argument("mechanism probability >= 0.5 is not decodable");
    }
    mechanisms.push_back(std::move(mech));
  }
  return make_detector_model(j.at("num_detectors").get<std::size_t>(),
                             j.at("num_observables").get<std::size_t>(), std::move(mechanisms));
}

std::string to_dem_json(const DetectorModel& model) {
  nlohmann::json j;
  j["num_detectors"] = model.num_detectors;
  j["num_observables"] = model.num_observables;
  j["mechanisms"] = nlohmann::json::array();
  for (const auto& m : model.mechanisms) {
    j["mechanisms"].push_back(
        {{"p", m.probability}, {"detectors", m.detectors}, {"observables", m.observables}});
  }
  return j.dump(1);
}

std::string serialize_dem(const DetectorModel& model) {
  std::ostringstream out;
  char buf[40];
  for (const auto& m : model.mechanisms) {
    std::snprintf(buf, sizeof buf, "%.17g", m.probability);
    out << "error(" << buf << ")";
    for (std::size_t d : m.detectors) out << " D" << d;
    for (std::size_t o : m.observables) out << " L" << o;
    out << "\n";
  }
  if (model.num_detectors > 0) out << "detector D" << model.num_detectors - 1 << "\n";
  if (model.num_observables > 0) out << "logical_observable L" << model.num_observables - 1 << "\n";
  return out.str();
}

DetectorModel merge_duplicates(const DetectorModel& model) {
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> index;
  std::vector<Mechanism> merged;
  for (const auto& m : model.mechanisms) {
    auto key = std::make_pair(m.detectors, m.observables);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), merged.size());
      merged.push_back(m);
    } else {
      double& p = merged[it->second].probability;
      p = p * (1.0 - m.probability) + m.probability * (1.0 - p);
    }
  }
  return make_detector_model(model.num_detectors, model.num_observables, std::move(merged));
}

DetectorModel load_detector_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return parse_dem_json(buf.str());
  }
  return parse_dem(buf.str());
}

}  // namespace qldpc

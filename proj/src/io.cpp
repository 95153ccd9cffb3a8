#include "besteffort/io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace besteffort {

namespace {

std::string position(std::size_t line, std::size_t column, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

bool is_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  for (char c : s.substr(1))
    if (!head(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

struct Token {
  std::string_view text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::string_view text;
  std::vector<Token> tokens;
};

// Splits into non-blank, non-comment lines of single-space separated tokens.
std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(' ') == std::string_view::npos) continue;
    if (line.front() == '#') continue;
    if (auto tab = line.find('\t'); tab != std::string_view::npos)
      throw ParseError(number, tab + 1, "tab character; separate tokens with single spaces");
    Line parsed{number, line, {}};
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto next = line.find(' ', pos);
      if (next == std::string_view::npos) next = line.size();
      if (next == pos) throw ParseError(number, pos + 1, "expected a token (tokens are separated by single spaces)");
      parsed.tokens.push_back({line.substr(pos, next - pos), pos + 1});
      pos = next + 1;
    }
    out.push_back(std::move(parsed));
  }
  return out;
}

std::uint32_t parse_nat(std::string_view s, std::size_t line, std::size_t column) {
  std::uint32_t value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, column, "expected a natural number, got '" + std::string(s) + "'");
  return value;
}

class GoalParser {
 public:
  GoalParser(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  Goal parse() {
    auto g = expr();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "' after goal");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_ + pos_, message); }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'" +
           (pos_ < text_.size() ? std::string(", got '") + text_[pos_] + "'" : std::string(" at end of goal")));
    ++pos_;
  }

  std::uint32_t nat() {
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected a natural number");
    return parse_nat(text_.substr(start, pos_ - start), line_, column_ + start);
  }

  Goal expr() {
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
    const auto word = text_.substr(start, pos_ - start);
    if (word.empty()) {
      fail(pos_ < text_.size() ? "expected a goal, got '" + std::string(1, text_[pos_]) + "'"
                               : "expected a goal at end of input");
    }
    if (word == "parity") return Goal::parity();
    static const char* const kKnown[] = {"reach", "ev", "first", "buchi", "cobuchi", "safe", "count", "and", "or", "not"};
    if (std::find(std::begin(kKnown), std::end(kKnown), word) == std::end(kKnown)) {
      pos_ = start;
      fail("unknown goal '" + std::string(word) + "'");
    }
    expect('(');
    Goal out = Goal::truth(true);
    if (word == "reach" || word == "ev") {
      out = Goal::ev(nat());
    } else if (word == "first") {
      out = Goal::first(nat());
    } else if (word == "buchi") {
      out = Goal::buchi(nat());
    } else if (word == "cobuchi") {
      out = Goal::cobuchi(nat());
    } else if (word == "safe") {
      std::set<Color> allowed{nat()};
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        allowed.insert(nat());
      }
      out = Goal::safe(std::move(allowed));
    } else if (word == "count") {
      const auto c = nat();
      expect(',');
      const auto at = pos_;
      const auto k = nat();
      if (k == 0) {
        pos_ = at;
        fail("count bound must be at least 1");
      }
      out = Goal::count(c, k);
    } else if (word == "not") {
      out = Goal::negate(expr());
    } else {
      auto a = expr();
      expect(',');
      auto b = expr();
      out = word == "and" ? Goal::conj(std::move(a), std::move(b)) : Goal::disj(std::move(a), std::move(b));
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

void expect_tokens(const Line& line, std::size_t count, const char* shape) {
  if (line.tokens.size() != count)
    throw ParseError(line.number, line.tokens.front().column, std::string("expected '") + shape + "'");
}

std::string_view value_after(const Token& tok, std::string_view key, std::size_t line) {
  if (tok.text.substr(0, key.size()) != key)
    throw ParseError(line, tok.column, "expected '" + std::string(key) + "...', got '" + std::string(tok.text) + "'");
  return tok.text.substr(key.size());
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(position(line, column, message)), line_(line), column_(column), message_(message) {}

Goal parse_goal(std::string_view text, std::size_t line, std::size_t column) {
  return GoalParser(text, line, column).parse();
}

GameFile parse_game(std::string_view text) {
  const auto lines = lines_of(text);
  GameFile out;
  std::map<std::string, std::size_t, std::less<>> declared;
  std::size_t goal_line = 0;

  for (const auto& line : lines) {
    const auto& head = line.tokens.front();
    if (head.text == "state") {
      expect_tokens(line, 4, "state NAME player=1|2 color=NAT");
      const auto& name = line.tokens[1];
      if (!is_name(name.text)) throw ParseError(line.number, name.column, "invalid state name '" + std::string(name.text) + "'");
      if (auto it = declared.find(name.text); it != declared.end())
        throw ParseError(line.number, name.column,
                         "duplicate state " + std::string(name.text) + " (first declared on line " +
                             std::to_string(it->second) + ")");
      const auto player = value_after(line.tokens[2], "player=", line.number);
      if (player != "1" && player != "2")
        throw ParseError(line.number, line.tokens[2].column + 7, "player must be 1 or 2");
      const auto color = parse_nat(value_after(line.tokens[3], "color=", line.number), line.number,
                                   line.tokens[3].column + 6);
      declared.emplace(std::string(name.text), line.number);
      out.game.add_state(std::string(name.text), player == "1" ? Player::One : Player::Two, color);
    } else if (head.text == "edge" || head.text == "goal") {
      if (head.text == "goal") {
        expect_tokens(line, 2, "goal EXPR");
        if (goal_line)
          throw ParseError(line.number, head.column,
                           "second goal declaration (first on line " + std::to_string(goal_line) + ")");
        goal_line = line.number;
        out.goal = parse_goal(line.tokens[1].text, line.number, line.tokens[1].column);
      } else {
        expect_tokens(line, 3, "edge NAME NAME");
      }
    } else {
      throw ParseError(line.number, head.column, "unknown declaration '" + std::string(head.text) + "'");
    }
  }
  if (!goal_line) throw ParseError(0, 0, "no goal declaration");

  for (const auto& line : lines) {
    if (line.tokens.front().text != "edge") continue;
    StateId ends[2];
    for (int i = 0; i < 2; ++i) {
      const auto& tok = line.tokens[1 + i];
      auto s = out.game.find(tok.text);
      if (!s) throw ParseError(line.number, tok.column, "unknown state " + std::string(tok.text) + " in edge");
      ends[i] = *s;
    }
    if (out.game.has_edge(ends[0], ends[1]))
      throw ParseError(line.number, line.tokens[1].column,
                       "duplicate edge " + std::string(line.tokens[1].text) + " -> " + std::string(line.tokens[2].text));
    out.game.add_edge(ends[0], ends[1]);
  }

  const auto issues = validate(out.game);
  if (!issues.empty()) {
    std::string joined;
    for (const auto& issue : issues) joined += (joined.empty() ? "" : "; ") + issue;
    throw ParseError(0, 0, joined);
  }
  return out;
}

std::string render_game(const Game& game, const Goal& goal) {
  std::ostringstream out;
  for (StateId s = 0; s < game.size(); ++s)
    out << "state " << game.name(s) << " player=" << (game.owner(s) == Player::One ? 1 : 2)
        << " color=" << game.color(s) << "\n";
  for (StateId s = 0; s < game.size(); ++s)
    for (auto t : game.successors(s)) out << "edge " << game.name(s) << " " << game.name(t) << "\n";
  out << "goal " << goal.to_string() << "\n";
  return out.str();
}

MemoryStrategy parse_strategy(std::string_view text, const Game& game, const Goal& goal) {
  const auto lines = lines_of(text);
  const std::size_t n = game.size();
  std::optional<Monitor> monitor;
  std::vector<std::string> memories;
  std::vector<std::vector<MemoryId>> update;
  std::vector<StateId> fallback(n, kNoState);
  std::map<std::pair<MemoryId, StateId>, StateId> specific;
  bool explicit_memory = false;

  auto state = [&](const Line& line, std::string_view name, std::size_t column) {
    auto s = game.find(name);
    if (!s) throw ParseError(line.number, column, "unknown state " + std::string(name));
    return *s;
  };
  auto memory = [&](const Line& line, std::string_view name, std::size_t column) {
    for (MemoryId m = 0; m < memories.size(); ++m)
      if (memories[m] == name) return m;
    throw ParseError(line.number, column,
                     memories.empty() ? "memory used before a 'memory' line" : "unknown memory " + std::string(name));
  };

  for (const auto& line : lines) {
    const auto& head = line.tokens.front();
    if (head.text == "memory") {
      if (!memories.empty()) throw ParseError(line.number, head.column, "second 'memory' line");
      if (line.tokens.size() < 2) throw ParseError(line.number, head.column, "expected 'memory monitor' or 'memory NAME...'");
      if (line.tokens.size() == 2 && line.tokens[1].text == "monitor") {
        monitor = compile_monitor(goal, game.colors());
        for (MemoryId m = 0; m < monitor->size(); ++m) memories.push_back("q" + std::to_string(m));
      } else {
        explicit_memory = true;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
          const auto& tok = line.tokens[i];
          if (!is_name(tok.text)) throw ParseError(line.number, tok.column, "invalid memory name '" + std::string(tok.text) + "'");
          if (std::find(memories.begin(), memories.end(), tok.text) != memories.end())
            throw ParseError(line.number, tok.column, "duplicate memory " + std::string(tok.text));
          memories.emplace_back(tok.text);
        }
        update.assign(memories.size(), std::vector<MemoryId>(n, 0));
        for (MemoryId m = 0; m < memories.size(); ++m) std::fill(update[m].begin(), update[m].end(), m);
      }
    } else if (head.text == "update") {
      if (line.tokens.size() != 5 || line.tokens[3].text != "->")
        throw ParseError(line.number, head.column, "expected 'update MEMORY STATE -> MEMORY'");
      if (!explicit_memory) throw ParseError(line.number, head.column, "'update' needs an explicit 'memory' line");
      const auto from = memory(line, line.tokens[1].text, line.tokens[1].column);
      const auto s = state(line, line.tokens[2].text, line.tokens[2].column);
      update[from][s] = memory(line, line.tokens[4].text, line.tokens[4].column);
    } else if (head.text == "move") {
      if (line.tokens.size() != 4 || line.tokens[2].text != "->")
        throw ParseError(line.number, head.column, "expected 'move STATE -> STATE' or 'move STATE@MEMORY -> STATE'");
      auto source = line.tokens[1].text;
      std::optional<MemoryId> mem;
      if (auto at = source.find('@'); at != std::string_view::npos) {
        mem = memory(line, source.substr(at + 1), line.tokens[1].column + at + 1);
        source = source.substr(0, at);
      }
      const auto s = state(line, source, line.tokens[1].column);
      const auto t = state(line, line.tokens[3].text, line.tokens[3].column);
      if (game.owner(s) != Player::One)
        throw ParseError(line.number, line.tokens[1].column, "state " + game.name(s) + " belongs to Player 2");
      if (!game.has_edge(s, t))
        throw ParseError(line.number, line.tokens[3].column, "no edge " + game.name(s) + " -> " + game.name(t));
      if (mem) {
        specific[{*mem, s}] = t;
      } else {
        fallback[s] = t;
      }
    } else {
      throw ParseError(line.number, head.column, "unknown declaration '" + std::string(head.text) + "'");
    }
  }

  for (StateId s = 0; s < n; ++s)
    if (game.owner(s) == Player::One && fallback[s] == kNoState && game.successors(s).size() == 1)
      fallback[s] = game.successors(s).front();

  const std::size_t size = memories.empty() ? 1 : memories.size();
  std::vector<std::vector<StateId>> choice(size, fallback);
  for (const auto& [key, t] : specific) choice[key.first][key.second] = t;

  if (monitor) return monitor_strategy(game, *monitor, std::move(choice));
  if (!explicit_memory) {
    for (StateId s = 0; s < n; ++s)
      if (game.owner(s) == Player::One && fallback[s] == kNoState)
        throw ParseError(0, 0, "no move for state " + game.name(s));
    return MemoryStrategy(PositionalStrategy{Player::One, std::move(choice[0])});
  }
  MemoryStrategy out;
  out.memory_size = memories.size();
  out.initial = 0;
  out.update = std::move(update);
  out.choice = std::move(choice);
  out.memory_names = std::move(memories);
  return out;
}

std::string to_dot(const Game& game, const Goal* goal) {
  std::ostringstream out;
  out << "digraph game {\n";
  if (goal) out << "  label=\"goal: " << goal->to_string() << "\";\n";
  for (StateId s = 0; s < game.size(); ++s)
    out << "  \"" << game.name(s) << "\" [shape=" << (game.owner(s) == Player::One ? "circle" : "box")
        << ", label=\"" << game.name(s) << ":" << game.color(s) << "\"];\n";
  for (StateId s = 0; s < game.size(); ++s)
    for (auto t : game.successors(s)) out << "  \"" << game.name(s) << "\" -> \"" << game.name(t) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string lasso_to_string(const Game& game, const Lasso& lasso) {
  std::string out;
  for (auto s : lasso.prefix) out += game.name(s) + " ";
  out += "(";
  for (std::size_t i = 0; i < lasso.cycle.size(); ++i) out += (i ? " " : "") + game.name(lasso.cycle[i]);
  return out + ")^omega";
}

}  // namespace besteffort

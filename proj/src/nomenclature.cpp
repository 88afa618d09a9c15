#include "dcopkit/nomenclature.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "dcopkit/errors.hpp"

namespace dcopkit {

namespace {

// Dimension slots in name order.
enum Slot { kX6, kX5, kX4, kX3, kX2, kX1, kSlotCount };

struct Word {
  std::string full;
  std::string letters;
  int code;  // enum value, or reason bitmask for X3
};

int reason_code(const DistributionReason& r) {
  return (r.domains ? 1 : 0) | (r.variables ? 2 : 0) | (r.costs ? 4 : 0);
}

DistributionReason reason_from(int code) {
  return {(code & 1) != 0, (code & 2) != 0, (code & 4) != 0};
}

std::vector<Word> make_reason_words() {
  static const std::array<std::pair<const char*, const char*>, 3> parts{
      {{"Domains", "D"}, {"Variables", "V"}, {"Costs", "C"}}};
  std::vector<Word> words;
  for (int code = 1; code < 8; ++code) {
    Word w{"", "", code};
    for (int bit = 0; bit < 3; ++bit) {
      if ((code & (1 << bit)) == 0) continue;
      if (!w.full.empty()) {
        w.full += "_";
        w.letters += "_";
      }
      w.full += parts[bit].first;
      w.letters += parts[bit].second;
    }
    words.push_back(std::move(w));
  }
  return words;
}

const std::array<std::vector<Word>, kSlotCount>& vocabulary() {
  static const std::array<std::vector<Word>, kSlotCount> words{{
      {{"Utilitarian", "U", 0}, {"Leximin", "L", 1}, {"Theil", "T", 2}},
      {{"Public", "P", 0}, {"Quantified", "Q", 1}, {"Steganographic", "S", 2},
       {"Cryptographic", "C", 3}},
      {{"Open", "O", 0}, {"Closed", "C", 1}},
      make_reason_words(),
      {{"Static", "S", 0}, {"Dynamic_Local", "D_L", 1}, {"Dynamic_Topology", "D_T", 2}},
      {{"Boolean", "B", 0}, {"Fuzzy", "F", 1}, {"Weighted", "W", 2}, {"Probabilistic", "P", 3}},
  }};
  return words;
}

constexpr std::array<const char*, kSlotCount> kSlotNames{"X6", "X5", "X4", "X3", "X2", "X1"};

std::array<int, kSlotCount> codes_of(const FrameworkDescriptor& d) {
  return {static_cast<int>(d.x6), static_cast<int>(d.x5), static_cast<int>(d.x4),
          reason_code(d.x3), static_cast<int>(d.x2), static_cast<int>(d.x1)};
}

const std::array<int, kSlotCount> kDefaults = codes_of(FrameworkDescriptor{});

FrameworkDescriptor from_codes(const std::array<int, kSlotCount>& c) {
  FrameworkDescriptor d;
  d.x6 = static_cast<Objective>(c[kX6]);
  d.x5 = static_cast<PrivacyManagement>(c[kX5]);
  d.x4 = static_cast<Decision>(c[kX4]);
  d.x3 = reason_from(c[kX3]);
  d.x2 = static_cast<Structure>(c[kX2]);
  d.x1 = static_cast<ValueSystem>(c[kX1]);
  return d;
}

const Word& word_for(Slot slot, int code) {
  for (const Word& w : vocabulary()[slot])
    if (w.code == code) return w;
  throw DomainError("invalid descriptor value");
}

constexpr int kBooleanCode = static_cast<int>(ValueSystem::Boolean);

struct Token {
  std::string text;
  std::size_t position;  // 1-based
};

// Longest-match tokenization against every word of every slot.
std::vector<Token> tokenize(std::string_view text, std::size_t offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    for (const auto& slot : vocabulary()) {
      for (const Word& w : slot) {
        for (const std::string* form : {&w.full, &w.letters})
          if (form->size() > best && text.substr(i, form->size()) == *form) best = form->size();
      }
    }
    if (best == 0)
      throw NameParseError("unrecognized dimension value at position " +
                               std::to_string(offset + i + 1) + ": '" + std::string(text.substr(i)) +
                               "'",
                           offset + i + 1);
    tokens.push_back({std::string(text.substr(i, best)), offset + i + 1});
    i += best;
  }
  return tokens;
}

std::optional<int> match(Slot slot, const std::string& text) {
  for (const Word& w : vocabulary()[slot])
    if (w.full == text || w.letters == text) return w.code;
  return std::nullopt;
}

struct Placement {
  std::vector<std::pair<Slot, int>> values;
  bool canonical = false;
};

// Every order-preserving placement of tokens into `slots`.
void place(const std::vector<Token>& tokens, const std::vector<Slot>& slots, std::size_t ti,
           std::size_t si, std::vector<std::pair<Slot, int>>& acc, std::vector<Placement>& out) {
  if (ti == tokens.size()) {
    out.push_back({acc, false});
    return;
  }
  for (std::size_t s = si; s < slots.size(); ++s) {
    if (slots.size() - s < tokens.size() - ti) break;
    if (auto code = match(slots[s], tokens[ti].text)) {
      acc.emplace_back(slots[s], *code);
      place(tokens, slots, ti + 1, s + 1, acc, out);
      acc.pop_back();
    }
  }
}

// A placement is canonical when the surviving values are exactly the ones
// nearest "Dis", i.e. only outermost defaults were elided.
std::vector<Placement> placements(const std::vector<Token>& tokens, const std::vector<Slot>& slots,
                                  bool near_end) {
  std::vector<Placement> out;
  std::vector<std::pair<Slot, int>> acc;
  place(tokens, slots, 0, 0, acc, out);
  for (Placement& p : out) {
    std::vector<Slot> used;
    for (const auto& v : p.values) used.push_back(v.first);
    std::vector<Slot> expected;
    if (near_end)
      expected.assign(slots.end() - static_cast<std::ptrdiff_t>(used.size()), slots.end());
    else
      expected.assign(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(used.size()));
    p.canonical = used == expected;
  }
  return out;
}

std::string candidates_text(const std::vector<Placement>& ps) {
  std::string text;
  for (const Placement& p : ps) {
    if (!text.empty()) text += " | ";
    std::string one;
    for (const auto& [slot, code] : p.values) {
      if (!one.empty()) one += " ";
      one += std::string(kSlotNames[slot]) + "=" + word_for(slot, code).full;
    }
    text += one.empty() ? "(none)" : one;
  }
  return text;
}

const Placement& choose(const std::vector<Placement>& ps, const std::vector<Token>& tokens,
                        std::size_t side_position) {
  const std::size_t pos = tokens.empty() ? side_position : tokens.front().position;
  if (ps.empty()) {
    // Report the first token that fits no slot in order.
    for (const Token& t : tokens) {
      bool any = false;
      for (int s = 0; s < kSlotCount; ++s) any = any || match(static_cast<Slot>(s), t.text);
      if (!any) throw NameParseError("unknown value '" + t.text + "'", t.position);
    }
    throw NameParseError("values out of order near position " + std::to_string(pos), pos);
  }
  std::vector<Placement> canonical;
  for (const Placement& p : ps)
    if (p.canonical) canonical.push_back(p);
  if (canonical.size() == 1) {
    for (const Placement& p : ps)
      if (p.canonical) return p;
  }
  if (ps.size() == 1) return ps.front();
  throw NameAmbiguityError("ambiguous name near position " + std::to_string(pos) +
                               "; candidates: " + candidates_text(ps),
                           pos);
}

}  // namespace

std::string_view name(Structure s) { return word_for(kX2, static_cast<int>(s)).full; }
std::string_view name(Decision d) { return word_for(kX4, static_cast<int>(d)).full; }
std::string_view name(PrivacyManagement m) { return word_for(kX5, static_cast<int>(m)).full; }
std::string name(const DistributionReason& r) { return word_for(kX3, reason_code(r)).full; }

std::string describe(const FrameworkDescriptor& d) {
  return "x6=" + std::string(name(d.x6)) + " x5=" + std::string(name(d.x5)) +
         " x4=" + std::string(name(d.x4)) + " x3=" + name(d.x3) +
         " x2=" + std::string(name(d.x2)) + " x1=" + std::string(name(d.x1));
}

std::string encode(const FrameworkDescriptor& d, NameForm form) {
  if (d.x3.empty()) throw DomainError("descriptor x3 must be non-empty");
  const auto codes = codes_of(d);
  auto render = [&](Slot s) {
    const Word& w = word_for(s, codes[s]);
    return form == NameForm::FullCamel ? w.full : w.letters;
  };
  if (form != NameForm::DefaultElided) {
    std::string out;
    for (Slot s : {kX6, kX5, kX4}) out += render(s);
    out += "Dis";
    for (Slot s : {kX3, kX2, kX1}) out += render(s);
    return out + "COP";
  }

  std::string left;
  bool keep = false;
  for (Slot s : {kX6, kX5, kX4}) {
    keep = keep || codes[s] != kDefaults[s];
    if (keep) left += render(s);
  }

  const bool boolean = codes[kX1] == kBooleanCode;
  std::vector<Slot> right_slots =
      boolean ? std::vector<Slot>{kX3, kX2} : std::vector<Slot>{kX3, kX2, kX1};
  std::vector<std::string> kept;
  keep = false;
  for (auto it = right_slots.rbegin(); it != right_slots.rend(); ++it) {
    keep = keep || codes[*it] != kDefaults[*it];
    if (keep) kept.push_back(render(*it));
  }
  std::string right;
  for (auto it = kept.rbegin(); it != kept.rend(); ++it) right += *it;
  return left + "Dis" + right + (boolean ? "CSP" : "COP");
}

FrameworkDescriptor decode(std::string_view name) {
  const auto dis = name.find("Dis");
  if (dis == std::string_view::npos) throw NameParseError("missing 'Dis' anchor", 1);
  const std::size_t tail_start = dis + 3;
  if (name.size() < tail_start + 3)
    throw NameParseError("missing 'COP' or 'CSP' suffix", name.size() + 1);
  const std::string_view suffix = name.substr(name.size() - 3);
  if (suffix != "COP" && suffix != "CSP")
    throw NameParseError("missing 'COP' or 'CSP' suffix", name.size() - 2);
  const bool csp = suffix == "CSP";

  const auto left_tokens = tokenize(name.substr(0, dis), 0);
  const auto right_tokens =
      tokenize(name.substr(tail_start, name.size() - 3 - tail_start), tail_start);

  const auto left = placements(left_tokens, {kX6, kX5, kX4}, /*near_end=*/true);
  const auto right = placements(right_tokens, csp ? std::vector<Slot>{kX3, kX2}
                                                  : std::vector<Slot>{kX3, kX2, kX1},
                                /*near_end=*/false);
  const Placement& l = choose(left, left_tokens, 1);
  const Placement& r = choose(right, right_tokens, tail_start + 1);

  auto codes = kDefaults;
  for (const auto& [slot, code] : l.values) codes[slot] = code;
  for (const auto& [slot, code] : r.values) codes[slot] = code;
  if (csp) codes[kX1] = kBooleanCode;
  return from_codes(codes);
}

FrameworkDescriptor parse_fields(std::string_view text) {
  std::vector<std::string> fields;
  std::vector<std::size_t> offsets;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    fields.emplace_back(text.substr(start, comma - start));
    offsets.push_back(start + 1);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != kSlotCount)
    throw NameParseError("expected six comma-separated fields X6,X5,X4,X3,X2,X1",
                         text.size() + 1);
  std::array<int, kSlotCount> codes{};
  for (int s = 0; s < kSlotCount; ++s) {
    auto code = match(static_cast<Slot>(s), fields[static_cast<std::size_t>(s)]);
    if (!code)
      throw NameParseError("'" + fields[static_cast<std::size_t>(s)] + "' is not a value of " +
                               kSlotNames[static_cast<std::size_t>(s)],
                           offsets[static_cast<std::size_t>(s)]);
    codes[static_cast<std::size_t>(s)] = *code;
  }
  return from_codes(codes);
}

std::vector<FrameworkDescriptor> all_descriptors() {
  std::vector<FrameworkDescriptor> out;
  std::array<int, kSlotCount> codes{};
  for (const Word& x6 : vocabulary()[kX6])
    for (const Word& x5 : vocabulary()[kX5])
      for (const Word& x4 : vocabulary()[kX4])
        for (const Word& x3 : vocabulary()[kX3])
          for (const Word& x2 : vocabulary()[kX2])
            for (const Word& x1 : vocabulary()[kX1]) {
              codes = {x6.code, x5.code, x4.code, x3.code, x2.code, x1.code};
              out.push_back(from_codes(codes));
            }
  return out;
}

}  // namespace dcopkit

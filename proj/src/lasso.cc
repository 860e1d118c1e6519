#include "unidet/lasso.hh"

#include <algorithm>

#include "text.hh"
#include "unidet/error.hh"

namespace unidet {

namespace {

SymbolId lookup(std::string_view tok, const std::vector<std::string>& alphabet) {
  auto it = std::find(alphabet.begin(), alphabet.end(), tok);
  if (it == alphabet.end())
    throw AlphabetError("unknown symbol '" + std::string(tok) + "' in lasso");
  return static_cast<SymbolId>(it - alphabet.begin());
}

void append_tokens(std::string_view part, const std::vector<std::string>& alphabet,
                   std::vector<SymbolId>& out) {
  for (const auto& line : text::tokenize(part))
    for (auto tok : line.tokens) out.push_back(lookup(tok, alphabet));
}

}  // namespace

Lasso parse_lasso(std::string_view input,
                  const std::vector<std::string>& alphabet) {
  auto bar = input.find('|');
  if (bar == std::string_view::npos)
    throw ParseError(1, "lasso needs '|' between stem and cycle");
  if (input.find('|', bar + 1) != std::string_view::npos)
    throw ParseError(1, "lasso has more than one '|'");
  Lasso lasso;
  append_tokens(input.substr(0, bar), alphabet, lasso.stem);
  append_tokens(input.substr(bar + 1), alphabet, lasso.cycle);
  if (lasso.cycle.empty()) throw ParseError(1, "lasso cycle is empty");
  return lasso;
}

std::string format_lasso(const Lasso& lasso,
                         const std::vector<std::string>& alphabet) {
  std::string out;
  for (SymbolId x : lasso.stem) {
    out += alphabet.at(x);
    out += ' ';
  }
  out += '|';
  for (SymbolId x : lasso.cycle) {
    out += ' ';
    out += alphabet.at(x);
  }
  return out;
}

}  // namespace unidet

#include <algorithm>
#include <cctype>

#include "rings.hpp"

namespace fusalg::detail {

namespace {

constexpr std::string_view kLetters = "abcdfghijklmnopqrstuvwxyz";  // 'e' is the identity

char inverse(char c) {
  return static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c)
                                                                       : std::tolower(c));
}

std::string_view word(const Label& l) { return l.str() == "e" ? std::string_view{} : l.str(); }

}  // namespace

FreeGroupRing::FreeGroupRing(int rank) : rank_(rank), alphabet_(kLetters.substr(0, rank)) {
  if (rank < 1 || rank > static_cast<int>(kLetters.size())) {
    throw Error(ErrorKind::InvalidSpec, "free_group rank must be in [1, 25]");
  }
}

std::string FreeGroupRing::name() const { return "free_group(" + std::to_string(rank_) + ")"; }

std::vector<Label> FreeGroupRing::generators() const {
  std::vector<Label> out;
  for (char c : alphabet_) out.emplace_back(std::string(1, c));
  return out;
}

int FreeGroupRing::letter_rank(char c) const {
  const auto pos = alphabet_.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (pos == std::string::npos) return -1;
  return static_cast<int>(2 * pos) + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0);
}

bool FreeGroupRing::is_valid(const Label& l) const {
  if (l.str() == "e") return true;
  const auto& s = l.str();
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (letter_rank(s[i]) < 0) return false;
    if (i > 0 && s[i] == inverse(s[i - 1])) return false;
  }
  return true;
}

double FreeGroupRing::dim(const Label& l) const {
  require_valid(l);
  return 1.0;
}

std::optional<std::int64_t> FreeGroupRing::exact_dim(const Label& l) const {
  require_valid(l);
  return 1;
}

Label FreeGroupRing::conj(const Label& l) const {
  require_valid(l);
  auto w = word(l);
  if (w.empty()) return unit();
  std::string out(w.rbegin(), w.rend());
  for (auto& c : out) c = inverse(c);
  return Label{std::move(out)};
}

FusionProduct FreeGroupRing::fuse(const Label& a, const Label& b) const {
  require_valid(a);
  require_valid(b);
  auto x = word(a);
  auto y = word(b);
  std::size_t cancel = 0;
  while (cancel < x.size() && cancel < y.size() &&
         y[cancel] == inverse(x[x.size() - 1 - cancel])) {
    ++cancel;
  }
  std::string out;
  out.reserve(x.size() + y.size() - 2 * cancel);
  out.append(x.substr(0, x.size() - cancel));
  out.append(y.substr(cancel));
  return {{out.empty() ? unit() : Label{std::move(out)}, 1}};
}

bool FreeGroupRing::less(const Label& a, const Label& b) const {
  auto x = word(a);
  auto y = word(b);
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int rx = letter_rank(x[i]);
    const int ry = letter_rank(y[i]);
    if (rx != ry) return rx < ry;
  }
  return false;
}

}  // namespace fusalg::detail

#pragma once

// Free-group words, integer group-ring elements, Fox derivatives and the
// boundary matrices attached to a finite presentation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casson {

struct Letter {
  int gen;  // 1-based generator index
  int exp;  // +1 or -1
  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
  friend auto operator<=>(const Letter& a, const Letter& b) = default;
};

// Freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  static Word from_letters(std::vector<Letter> ls) {
    Word w;
    w.ls_.reserve(ls.size());
    for (const Letter& l : ls) w.push(l);
    return w;
  }

  static Word gen(int i, int e = 1) {
    if (i <= 0) throw std::invalid_argument("generator index must be positive");
    if (e != 1 && e != -1) throw std::invalid_argument("letter exponent must be +-1");
    Word w;
    w.ls_.push_back({i, e});
    return w;
  }

  const std::vector<Letter>& letters() const { return ls_; }
  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }

  int max_gen() const {
    int m = 0;
    for (const Letter& l : ls_) m = std::max(m, l.gen);
    return m;
  }

  // net exponent of generator i, i.e. the abelianized image
  long long exponent_sum(int i) const {
    long long s = 0;
    for (const Letter& l : ls_)
      if (l.gen == i) s += l.exp;
    return s;
  }

  Word inverse() const {
    Word w;
    w.ls_.reserve(ls_.size());
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
      w.ls_.push_back({it->gen, -it->exp});
    return w;
  }

  Word pow(long long n) const {
    Word base = n >= 0 ? *this : inverse();
    Word out;
    for (long long k = 0; k < (n >= 0 ? n : -n); ++k) out = out * base;
    return out;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    for (const Letter& l : b.ls_) w.push(l);
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.ls_ == b.ls_; }
  friend auto operator<=>(const Word& a, const Word& b) = default;

  // conjugation-minimal representative: strips matched ends, x w x^-1 -> w
  Word cyclically_reduced() const {
    std::vector<Letter> v = ls_;
    while (v.size() >= 2 && v.front().gen == v.back().gen &&
           v.front().exp == -v.back().exp) {
      v.erase(v.begin());
      v.pop_back();
    }
    return from_letters(std::move(v));
  }

  std::string str() const {
    if (ls_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t k = 0; k < ls_.size(); ++k) {
      if (k) os << ' ';
      os << 'x' << ls_[k].gen;
      if (ls_[k].exp < 0) os << "^-1";
    }
    return os.str();
  }

  // tokens: `x3` or `x3^-1`, whitespace separated; "1" or blank is the identity
  static Word parse(const std::string& text) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      if (tok == "1") continue;
      if (tok.size() < 2 || tok[0] != 'x')
        throw std::invalid_argument("bad word token: " + tok);
      std::size_t caret = tok.find('^');
      int e = 1;
      std::string num = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
      if (caret != std::string::npos) {
        std::string es = tok.substr(caret + 1);
        if (es == "-1") e = -1;
        else if (es == "1") e = 1;
        else throw std::invalid_argument("bad exponent in token: " + tok);
      }
      int g = 0;
      try {
        g = std::stoi(num);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad generator in token: " + tok);
      }
      if (g <= 0) throw std::invalid_argument("bad generator in token: " + tok);
      w.push({g, e});
    }
    return w;
  }

 private:
  void push(const Letter& l) {
    if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("letter exponent must be +-1");
    if (l.gen <= 0) throw std::invalid_argument("generator index must be positive");
    if (!ls_.empty() && ls_.back().gen == l.gen && ls_.back().exp == -l.exp)
      ls_.pop_back();
    else
      ls_.push_back(l);
  }

  std::vector<Letter> ls_;
};

inline Word reduce_word(const std::vector<Letter>& raw) { return Word::from_letters(raw); }

// Finite integer combination of words with word concatenation as group law.
class GroupRingElt {
 public:
  GroupRingElt() = default;
  GroupRingElt(long long c) {
    if (c) t_[Word()] = c;
  }
  explicit GroupRingElt(const Word& w) { t_[w] = 1; }

  static GroupRingElt one() { return GroupRingElt(1); }

  const std::map<Word, long long>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Word& w, long long c) {
    if (!c) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_[w] = c;
    } else if ((it->second += c) == 0) {
      t_.erase(it);
    }
  }

  friend GroupRingElt operator+(const GroupRingElt& a, const GroupRingElt& b) {
    GroupRingElt r = a;
    for (const auto& [w, c] : b.t_) r.add(w, c);
    return r;
  }
  friend GroupRingElt operator-(const GroupRingElt& a, const GroupRingElt& b) {
    GroupRingElt r = a;
    for (const auto& [w, c] : b.t_) r.add(w, -c);
    return r;
  }
  friend GroupRingElt operator-(const GroupRingElt& a) { return GroupRingElt() - a; }
  friend GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b) {
    GroupRingElt r;
    for (const auto& [wa, ca] : a.t_)
      for (const auto& [wb, cb] : b.t_) r.add(wa * wb, ca * cb);
    return r;
  }
  friend GroupRingElt operator*(long long c, const GroupRingElt& a) {
    GroupRingElt r;
    for (const auto& [w, cw] : a.t_) r.add(w, c * cw);
    return r;
  }
  friend bool operator==(const GroupRingElt& a, const GroupRingElt& b) { return a.t_ == b.t_; }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : t_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      long long a = c > 0 ? c : -c;
      if (a != 1) os << a << "*";
      os << w.str();
      first = false;
    }
    return os.str();
  }

 private:
  std::map<Word, long long> t_;
};

// one_minus(w) = 1 - w, the ubiquitous boundary coefficient
inline GroupRingElt one_minus(const Word& w) {
  return GroupRingElt(1) - GroupRingElt(w);
}

// Fox derivative with respect to generator i:
// d(uv) = du + u dv, d(x_i) = 1, d(x_j) = 0, d(x_i^-1) = -x_i^-1.
inline GroupRingElt fox_derivative(const Word& w, int i) {
  if (i <= 0) throw std::invalid_argument("generator index must be positive");
  GroupRingElt out;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.exp == 1) {
      if (l.gen == i) out.add(prefix, 1);
      prefix = prefix * Word::gen(l.gen, 1);
    } else {
      prefix = prefix * Word::gen(l.gen, -1);
      if (l.gen == i) out.add(prefix, -1);
    }
  }
  return out;
}

struct Presentation {
  int gens = 0;
  std::vector<Word> relators;

  void validate() const {
    if (gens <= 0) throw std::invalid_argument("presentation needs a positive generator count");
    for (const Word& r : relators)
      if (r.max_gen() > gens)
        throw std::invalid_argument("relator uses generator beyond the declared count");
  }
};

struct BoundaryMatrices {
  // d2[i][j] = fox derivative of relator j by generator i (gens x relators)
  std::vector<std::vector<GroupRingElt>> d2;
  // d1[i] = 1 - x_i
  std::vector<GroupRingElt> d1;
};

inline BoundaryMatrices boundary_matrices(const Presentation& p) {
  p.validate();
  BoundaryMatrices b;
  b.d2.assign(p.gens, std::vector<GroupRingElt>(p.relators.size()));
  b.d1.resize(p.gens);
  for (int i = 1; i <= p.gens; ++i) {
    for (std::size_t j = 0; j < p.relators.size(); ++j)
      b.d2[i - 1][j] = fox_derivative(p.relators[j], i);
    b.d1[i - 1] = one_minus(Word::gen(i));
  }
  return b;
}

// text form: header `gens: n`, then one relator per line
inline Presentation parse_presentation(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Presentation p;
  bool have_header = false;
  while (std::getline(is, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    if (!have_header) {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos || line.substr(a, 4) != "gens")
        throw std::invalid_argument("presentation file must start with `gens: n`");
      p.gens = std::stoi(line.substr(colon + 1));
      have_header = true;
    } else {
      p.relators.push_back(Word::parse(line));
    }
  }
  if (!have_header) throw std::invalid_argument("empty presentation file");
  p.validate();
  return p;
}

inline std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens: " << p.gens << "\n";
  for (const Word& r : p.relators) os << r.str() << "\n";
  return os.str();
}

}  // namespace casson

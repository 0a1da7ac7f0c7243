#include "prodset/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "prodset/error.hpp"

namespace prodset {

namespace {

int letter_key(int64_t x) { return 2 * static_cast<int>(std::llabs(x) - 1) + (x < 0 ? 1 : 0); }

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int64_t parse_int(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) throw ParseError("empty integer");
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + t + "'");
  }
  if (used != t.size()) throw ParseError("bad integer '" + t + "'");
  return v;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

}  // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ g.size();
  for (int64_t x : g.payload()) {
    uint64_t v = static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= v;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

std::vector<int64_t> free_reduce(std::span<const int64_t> letters) {
  std::vector<int64_t> out;
  out.reserve(letters.size());
  for (int64_t x : letters) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

GroupDescriptor GroupDescriptor::lattice(int dimension) {
  if (dimension < 1) throw InvalidArgument("lattice dimension must be >= 1");
  return GroupDescriptor(GroupKind::Lattice, dimension, {});
}

GroupDescriptor GroupDescriptor::cyclic(std::vector<int64_t> moduli) {
  if (moduli.empty()) throw InvalidArgument("cyclic product needs at least one modulus");
  for (int64_t m : moduli) {
    if (m < 1) throw InvalidArgument("cyclic moduli must be >= 1");
  }
  int n = static_cast<int>(moduli.size());
  return GroupDescriptor(GroupKind::Cyclic, n, std::move(moduli));
}

GroupDescriptor GroupDescriptor::free(int rank) {
  if (rank < 1) throw InvalidArgument("free group rank must be >= 1");
  if (rank > 26) throw InvalidArgument("free group rank must be <= 26 (letters a..z)");
  return GroupDescriptor(GroupKind::Free, rank, {});
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  std::string kind;
  std::optional<int64_t> rank, dim;
  std::vector<int64_t> moduli;
  for (const auto& part : split(text, ',')) {
    auto kv = trim(part);
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("group descriptor field without '=': " + kv);
    auto key = trim(kv.substr(0, eq));
    auto value = trim(kv.substr(eq + 1));
    if (key == "kind") {
      kind = value;
    } else if (key == "rank") {
      rank = parse_int(value);
    } else if (key == "dim") {
      dim = parse_int(value);
    } else if (key == "moduli" || key == "modulus") {
      for (const auto& m : split(value, ':')) moduli.push_back(parse_int(m));
    } else {
      throw ParseError("unknown group descriptor key '" + key + "'");
    }
  }
  try {
    if (kind == "free") {
      if (!rank) throw ParseError("kind=free requires rank");
      return free(static_cast<int>(*rank));
    }
    if (kind == "lattice") {
      if (!dim) throw ParseError("kind=lattice requires dim");
      return lattice(static_cast<int>(*dim));
    }
    if (kind == "cyclic") {
      if (moduli.empty()) throw ParseError("kind=cyclic requires moduli");
      return cyclic(moduli);
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown group kind '" + kind + "'");
}

std::string GroupDescriptor::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case GroupKind::Free:
      os << "kind=free,rank=" << arity_;
      break;
    case GroupKind::Lattice:
      os << "kind=lattice,dim=" << arity_;
      break;
    case GroupKind::Cyclic:
      os << "kind=cyclic,moduli=";
      for (std::size_t i = 0; i < moduli_.size(); ++i) os << (i ? ":" : "") << moduli_[i];
      break;
  }
  return os.str();
}

int64_t GroupDescriptor::order() const {
  if (kind_ != GroupKind::Cyclic) throw InvalidArgument("order() of an infinite group");
  int64_t n = 1;
  for (int64_t m : moduli_) n *= m;
  return n;
}

GroupElement GroupDescriptor::identity() const {
  if (kind_ == GroupKind::Free) return GroupElement{};
  return GroupElement(std::vector<int64_t>(arity_, 0));
}

bool GroupDescriptor::contains(const GroupElement& g) const {
  switch (kind_) {
    case GroupKind::Lattice:
      return static_cast<int>(g.size()) == arity_;
    case GroupKind::Cyclic:
      if (static_cast<int>(g.size()) != arity_) return false;
      for (int i = 0; i < arity_; ++i) {
        if (g[i] < 0 || g[i] >= moduli_[i]) return false;
      }
      return true;
    case GroupKind::Free:
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0 || std::llabs(g[i]) > arity_) return false;
        if (i > 0 && g[i] == -g[i - 1]) return false;
      }
      return true;
  }
  return false;
}

void GroupDescriptor::require(const GroupElement& g) const {
  if (!contains(g)) throw DescriptorMismatch("element does not belong to " + to_string());
}

GroupElement GroupDescriptor::mul(const GroupElement& g, const GroupElement& h) const {
  require(g);
  require(h);
  if (kind_ == GroupKind::Free) {
    std::vector<int64_t> out(g.payload().begin(), g.payload().end());
    for (int64_t x : h.payload()) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return GroupElement(std::move(out));
  }
  std::vector<int64_t> out(arity_);
  for (int i = 0; i < arity_; ++i) {
    out[i] = g[i] + h[i];
    if (kind_ == GroupKind::Cyclic) out[i] = mod(out[i], moduli_[i]);
  }
  return GroupElement(std::move(out));
}

GroupElement GroupDescriptor::inv(const GroupElement& g) const {
  require(g);
  std::vector<int64_t> out(g.size());
  if (kind_ == GroupKind::Free) {
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = -g[g.size() - 1 - i];
  } else {
    for (int i = 0; i < arity_; ++i) {
      out[i] = kind_ == GroupKind::Cyclic ? mod(-g[i], moduli_[i]) : -g[i];
    }
  }
  return GroupElement(std::move(out));
}

std::vector<GroupElement> GroupDescriptor::generators() const {
  std::vector<GroupElement> gens;
  for (int i = 0; i < arity_; ++i) {
    if (kind_ == GroupKind::Free) {
      gens.emplace_back(std::vector<int64_t>{i + 1});
      gens.emplace_back(std::vector<int64_t>{-(i + 1)});
    } else {
      std::vector<int64_t> e(arity_, 0), f(arity_, 0);
      e[i] = 1;
      f[i] = -1;
      if (kind_ == GroupKind::Cyclic) {
        e[i] = mod(1, moduli_[i]);
        f[i] = mod(-1, moduli_[i]);
      }
      gens.emplace_back(std::move(e));
      gens.emplace_back(std::move(f));
    }
  }
  return gens;
}

int64_t GroupDescriptor::length(const GroupElement& g) const {
  switch (kind_) {
    case GroupKind::Free:
      return static_cast<int64_t>(g.size());
    case GroupKind::Lattice: {
      int64_t n = 0;
      for (int64_t x : g.payload()) n = std::max<int64_t>(n, std::llabs(x));
      return n;
    }
    case GroupKind::Cyclic: {
      int64_t n = 0;
      for (int i = 0; i < arity_; ++i) n += std::min(g[i], moduli_[i] - g[i]);
      return n;
    }
  }
  return 0;
}

bool GroupDescriptor::less(const GroupElement& g, const GroupElement& h) const {
  if (kind_ == GroupKind::Free) {
    if (g.size() != h.size()) return g.size() < h.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      int a = letter_key(g[i]);
      int b = letter_key(h[i]);
      if (a != b) return a < b;
    }
    return false;
  }
  return std::lexicographical_compare(g.payload().begin(), g.payload().end(), h.payload().begin(),
                                      h.payload().end());
}

std::string GroupDescriptor::format(const GroupElement& g) const {
  if (kind_ == GroupKind::Free) {
    if (g.size() == 0) return "e";
    std::string s;
    for (int64_t x : g.payload()) {
      char c = static_cast<char>('a' + std::llabs(x) - 1);
      s.push_back(x < 0 ? static_cast<char>(std::toupper(c)) : c);
    }
    return s;
  }
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s;
}

GroupElement GroupDescriptor::word(std::string_view letters) const {
  if (kind_ != GroupKind::Free) throw InvalidArgument("word() needs a free group");
  std::string t = trim(letters);
  if (t == "e" || t.empty()) return identity();
  std::vector<int64_t> raw;
  for (char c : t) {
    if (!std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("bad letter '") + c + "'");
    int64_t idx = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    if (idx > arity_) throw ParseError(std::string("letter '") + c + "' exceeds rank " + std::to_string(arity_));
    raw.push_back(std::isupper(static_cast<unsigned char>(c)) ? -idx : idx);
  }
  return GroupElement(free_reduce(raw));
}

GroupElement GroupDescriptor::integer(int64_t n) const {
  if (arity_ != 1 || kind_ == GroupKind::Free) throw InvalidArgument("integer() needs Z or a single cyclic factor");
  return GroupElement(std::vector<int64_t>{kind_ == GroupKind::Cyclic ? mod(n, moduli_[0]) : n});
}

GroupElement GroupDescriptor::parse_element(std::string_view text) const {
  if (kind_ == GroupKind::Free) return word(text);
  std::vector<int64_t> v;
  for (const auto& part : split(text, ',')) v.push_back(parse_int(part));
  if (static_cast<int>(v.size()) != arity_) throw ParseError("element arity mismatch: '" + std::string(text) + "'");
  if (kind_ == GroupKind::Cyclic) {
    for (int i = 0; i < arity_; ++i) v[i] = mod(v[i], moduli_[i]);
  }
  return GroupElement(std::move(v));
}

Window::Window(GroupDescriptor desc, std::vector<GroupElement> elements, std::optional<int64_t> ball_radius)
    : desc_(std::move(desc)), elements_(std::move(elements)), radius_(ball_radius) {
  std::sort(elements_.begin(), elements_.end(), desc_.comparator());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Window::contains(const GroupElement& g) const {
  if (radius_ && desc_.contains(g)) return desc_.length(g) <= *radius_;
  return std::binary_search(elements_.begin(), elements_.end(), g, desc_.comparator());
}

std::size_t predicted_ball_size(const GroupDescriptor& desc, int64_t r) {
  if (r < 0) return 0;
  const auto R = static_cast<std::size_t>(r);
  switch (desc.kind()) {
    case GroupKind::Free: {
      const std::size_t k = desc.arity();
      if (k == 1) return sat_add(sat_mul(2, R), 1);
      // 1 + 2k * sum_{j<r} (2k-1)^j
      std::size_t total = 1, layer = 2 * k;
      for (std::size_t j = 1; j <= R; ++j) {
        total = sat_add(total, layer);
        layer = sat_mul(layer, 2 * k - 1);
      }
      return total;
    }
    case GroupKind::Lattice: {
      std::size_t total = 1;
      for (int i = 0; i < desc.arity(); ++i) total = sat_mul(total, sat_add(sat_mul(2, R), 1));
      return total;
    }
    case GroupKind::Cyclic: {
      std::size_t box = 1, order = 1;
      for (int64_t m : desc.moduli()) {
        box = sat_mul(box, sat_add(sat_mul(2, R), 1));
        order = sat_mul(order, static_cast<std::size_t>(m));
      }
      return std::min(box, order);
    }
  }
  return 0;
}

namespace {

void extend_free(const GroupDescriptor& desc, std::vector<int64_t>& word, int64_t remaining,
                 std::vector<GroupElement>& layer) {
  if (remaining == 0) {
    layer.emplace_back(word);
    return;
  }
  for (int i = 1; i <= desc.arity(); ++i) {
    for (int64_t x : {static_cast<int64_t>(i), static_cast<int64_t>(-i)}) {
      if (!word.empty() && word.back() == -x) continue;
      word.push_back(x);
      extend_free(desc, word, remaining - 1, layer);
      word.pop_back();
    }
  }
}

}  // namespace

Ball enumerate_ball(const GroupDescriptor& desc, int64_t radius, std::size_t cap) {
  if (radius < 0) throw InvalidArgument("ball radius must be >= 0");
  const std::size_t predicted = predicted_ball_size(desc, radius);
  if (predicted > cap) {
    throw ResourceCapExceeded("ball of radius " + std::to_string(radius) + " in " + desc.to_string() + " has " +
                                  std::to_string(predicted) + " elements",
                              cap);
  }
  std::vector<GroupElement> out;
  out.reserve(predicted);
  switch (desc.kind()) {
    case GroupKind::Free: {
      std::vector<int64_t> w;
      for (int64_t len = 0; len <= radius; ++len) extend_free(desc, w, len, out);
      // Already shortlex ordered by construction.
      return Window(desc, std::move(out), radius);
    }
    case GroupKind::Lattice:
    case GroupKind::Cyclic: {
      const int d = desc.arity();
      std::vector<int64_t> offset(d, -radius);
      while (true) {
        int64_t l1 = 0;
        for (int64_t x : offset) l1 += std::llabs(x);
        if (desc.kind() == GroupKind::Lattice) {
          out.emplace_back(offset);
        } else if (l1 <= radius) {
          std::vector<int64_t> res(d);
          for (int i = 0; i < d; ++i) res[i] = mod(offset[i], desc.moduli()[i]);
          GroupElement g(std::move(res));
          if (desc.length(g) <= radius) out.push_back(std::move(g));
        }
        int i = d - 1;
        while (i >= 0 && offset[i] == radius) offset[i--] = -radius;
        if (i < 0) break;
        ++offset[i];
      }
      return Window(desc, std::move(out), radius);
    }
  }
  return Window(desc, {}, radius);
}

Window lattice_box(const GroupDescriptor& desc, int64_t lo, int64_t hi) {
  if (desc.kind() != GroupKind::Lattice) throw InvalidArgument("lattice_box needs a lattice descriptor");
  if (hi < lo) throw InvalidArgument("empty box bounds");
  const int d = desc.arity();
  std::vector<GroupElement> out;
  if (hi == lo) return Window(desc, {});
  std::vector<int64_t> p(d, lo);
  while (true) {
    out.emplace_back(p);
    int i = d - 1;
    while (i >= 0 && p[i] == hi - 1) p[i--] = lo;
    if (i < 0) break;
    ++p[i];
  }
  return Window(desc, std::move(out));
}

}  // namespace prodset

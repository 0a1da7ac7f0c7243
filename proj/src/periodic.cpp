#include "prodset/periodic.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "prodset/error.hpp"

namespace prodset {

namespace {

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

constexpr int64_t kMaxModulus = 1'000'000'000;

}  // namespace

PeriodicIntSet::PeriodicIntSet(int64_t modulus, std::vector<int64_t> residues) : modulus_(modulus) {
  if (modulus < 1) throw InvalidArgument("periodic set modulus must be >= 1");
  if (modulus > kMaxModulus) throw ResourceCapExceeded("periodic modulus too large", kMaxModulus);
  for (int64_t& r : residues) r = mod(r, modulus);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  residues_ = std::move(residues);
}

PeriodicIntSet PeriodicIntSet::parse(std::string_view text) {
  std::optional<int64_t> m;
  std::vector<int64_t> residues;
  bool saw_residues = false;
  std::string s(text);
  std::stringstream fields(s);
  std::string field;
  while (std::getline(fields, field, ';')) {
    field = trim(field);
    if (field.empty()) continue;
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("periodic set field without '=': " + field);
    auto key = trim(field.substr(0, eq));
    auto val = trim(field.substr(eq + 1));
    try {
      if (key == "mod") {
        m = std::stoll(val);
      } else if (key == "residues") {
        saw_residues = true;
        std::stringstream rs(val);
        std::string r;
        while (std::getline(rs, r, ',')) {
          r = trim(r);
          if (!r.empty()) residues.push_back(std::stoll(r));
        }
      } else {
        throw ParseError("unknown periodic set key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer in periodic set '" + std::string(text) + "'");
    }
  }
  if (!m || !saw_residues) throw ParseError("periodic set needs mod= and residues=: '" + std::string(text) + "'");
  try {
    return PeriodicIntSet(*m, std::move(residues));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string PeriodicIntSet::to_string() const {
  std::ostringstream os;
  os << "mod=" << modulus_ << ";residues=";
  for (std::size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
  return os.str();
}

bool PeriodicIntSet::contains(int64_t n) const {
  return std::binary_search(residues_.begin(), residues_.end(), mod(n, modulus_));
}

PeriodicIntSet PeriodicIntSet::lift(int64_t modulus) const {
  if (modulus % modulus_ != 0) throw InvalidArgument("lift target must be a multiple of the modulus");
  std::vector<int64_t> out;
  out.reserve(residues_.size() * (modulus / modulus_));
  for (int64_t k = 0; k < modulus; k += modulus_) {
    for (int64_t r : residues_) out.push_back(k + r);
  }
  return PeriodicIntSet(modulus, std::move(out));
}

PeriodicIntSet PeriodicIntSet::normalized() const {
  for (int64_t d = 1; d <= modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool periodic = true;
    for (int64_t r : residues_) {
      if (!contains(r + d)) {
        periodic = false;
        break;
      }
    }
    if (periodic) {
      std::vector<int64_t> out;
      for (int64_t r : residues_) {
        if (r < d) out.push_back(r);
      }
      return PeriodicIntSet(d, std::move(out));
    }
  }
  return *this;
}

PeriodicIntSet PeriodicIntSet::complement() const {
  std::vector<int64_t> out;
  for (int64_t r = 0; r < modulus_; ++r) {
    if (!std::binary_search(residues_.begin(), residues_.end(), r)) out.push_back(r);
  }
  return PeriodicIntSet(modulus_, std::move(out));
}

PeriodicIntSet PeriodicIntSet::negated() const {
  std::vector<int64_t> out;
  for (int64_t r : residues_) out.push_back(-r);
  return PeriodicIntSet(modulus_, std::move(out));
}

PeriodicIntSet PeriodicIntSet::translated(int64_t t) const {
  std::vector<int64_t> out;
  for (int64_t r : residues_) out.push_back(r + t);
  return PeriodicIntSet(modulus_, std::move(out));
}

bool operator==(const PeriodicIntSet& a, const PeriodicIntSet& b) {
  auto na = a.normalized();
  auto nb = b.normalized();
  return na.modulus_ == nb.modulus_ && na.residues_ == nb.residues_;
}

PeriodicIntSet periodic_product(const PeriodicIntSet& a, const PeriodicIntSet& b) {
  const int64_t l = std::lcm(a.modulus(), b.modulus());
  if (l > kMaxModulus) throw ResourceCapExceeded("lcm of moduli too large", kMaxModulus);
  // (x + m_A Z) + (y + m_B Z) = x + y + gcd(m_A, m_B) Z.
  const int64_t g = std::gcd(a.modulus(), b.modulus());
  std::vector<char> cls(static_cast<std::size_t>(g), 0);
  for (int64_t x : a.residues()) {
    for (int64_t y : b.residues()) cls[mod(x + y, g)] = 1;
  }
  std::vector<int64_t> out;
  for (int64_t r = 0; r < l; ++r) {
    if (cls[r % g]) out.push_back(r);
  }
  return PeriodicIntSet(l, std::move(out));
}

PeriodicIntSet translate_union(const std::vector<int64_t>& f, const PeriodicIntSet& a) {
  std::vector<int64_t> out;
  for (int64_t t : f) {
    for (int64_t r : a.residues()) out.push_back(r + t);
  }
  return PeriodicIntSet(a.modulus(), std::move(out));
}

}  // namespace prodset

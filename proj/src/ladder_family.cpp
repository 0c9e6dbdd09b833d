#include "gcs/ladder_family.hpp"

#include <cmath>
#include <string>

#include "gcs/basis.hpp"
#include "gcs/errors.hpp"

namespace gcs {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::one: return "one";
    case FamilyKind::shifted: return "shifted";
    case FamilyKind::cubic: return "cubic";
    case FamilyKind::custom: return "custom";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "one") return FamilyKind::one;
  if (name == "shifted") return FamilyKind::shifted;
  if (name == "cubic") return FamilyKind::cubic;
  if (name == "custom") return FamilyKind::custom;
  throw Error(ErrorKind::invalid_request, "unknown family '" + std::string(name) + "'");
}

LadderFamily::LadderFamily(FamilyKind kind, std::function<double(int)> f, std::string name,
                           int first_nonzero)
    : kind_(kind), f_(std::move(f)), name_(std::move(name)), first_nonzero_(first_nonzero) {}

LadderFamily LadderFamily::one() {
  return {FamilyKind::one, [](int) { return 1.0; }, "one", 1};
}

LadderFamily LadderFamily::shifted() {
  return {FamilyKind::shifted,
          [](int n) { return n == 1 ? 0.0 : std::sqrt((n - 1.0) / n); }, "shifted", 2};
}

LadderFamily LadderFamily::cubic() {
  return {FamilyKind::cubic,
          [](int n) { return n <= 2 ? 0.0 : (n - 2.0) * std::sqrt((n - 1.0) / n); }, "cubic", 3};
}

LadderFamily LadderFamily::builtin(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::one: return one();
    case FamilyKind::shifted: return shifted();
    case FamilyKind::cubic: return cubic();
    case FamilyKind::custom: break;
  }
  throw Error(ErrorKind::invalid_request, "custom family needs an explicit function");
}

LadderFamily LadderFamily::custom(std::function<double(int)> f, std::string name) {
  if (!f) throw Error(ErrorKind::domain, "custom family: empty function");
  for (int n = 1; n <= kMaxBasis + 2; ++n) {
    const double v = f(n);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::domain, "custom family: f(" + std::to_string(n) + ") is not finite");
    }
    if (n >= 3 && v == 0.0) {
      throw Error(ErrorKind::domain, "custom family: f(" + std::to_string(n) + ") = 0; zeros are allowed only at n = 1, 2");
    }
  }
  const bool z1 = f(1) == 0.0;
  const bool z2 = f(2) == 0.0;
  if (!z1 && z2) throw Error(ErrorKind::domain, "custom family: f(2) = 0 requires f(1) = 0");
  const int first = z1 ? (z2 ? 3 : 2) : 1;
  return {FamilyKind::custom, std::move(f), std::move(name), first};
}

double LadderFamily::operator()(int n) const {
  if (n < 1) throw Error(ErrorKind::domain, "ladder function evaluated at n < 1");
  return f_(n);
}

}  // namespace gcs

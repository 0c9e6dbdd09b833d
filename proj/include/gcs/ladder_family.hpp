#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace gcs {

enum class FamilyKind { one, shifted, cubic, custom };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// The real function f(n), n >= 1, that parameterizes the annihilation operator.
///
/// Built-ins:
///   one      f(n) = 1
///   shifted  f(n) = sqrt(n-1)/sqrt(n)        (f(1) = 0)
///   cubic    f(n) = (n-2) sqrt(n-1)/sqrt(n)  (f(1) = f(2) = 0)
///
/// Custom functions may vanish only at n = 1, or at both n = 1 and n = 2.
class LadderFamily {
 public:
  static LadderFamily one();
  static LadderFamily shifted();
  static LadderFamily cubic();
  /// Validates the zero pattern over 1..kMaxBasis+2; throws Error(domain) otherwise.
  static LadderFamily custom(std::function<double(int)> f, std::string name = "custom");
  static LadderFamily builtin(FamilyKind kind);

  FamilyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// f(n) for n >= 1.
  double operator()(int n) const;

  /// Smallest n with f(n) != 0 (1, 2 or 3).
  int first_nonzero() const { return first_nonzero_; }
  /// Lowest Landau index carried by the coherent states of this family.
  int support_start() const { return first_nonzero_ - 1; }

 private:
  LadderFamily(FamilyKind kind, std::function<double(int)> f, std::string name, int first_nonzero);

  FamilyKind kind_;
  std::function<double(int)> f_;
  std::string name_;
  int first_nonzero_;
};

}  // namespace gcs

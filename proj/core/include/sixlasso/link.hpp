#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sixlasso {

enum class LinkKind { Linear, Logistic, Probit, Sign, Tabulated };

std::string_view to_string(LinkKind kind) noexcept;
/// Accepts the lowercase tags used on the command line ("linear", "logistic",
/// "probit", "sign").
std::optional<LinkKind> parse_link_kind(std::string_view tag) noexcept;

/// Conditional mean F(t) = E[y | x'beta* = t].
///
/// Built-in kinds are odd and nondecreasing. A tabulated link is a
/// piecewise-linear interpolant through (knot, value) pairs with ascending
/// knots, values in [-1, 1], held constant beyond the end knots.
class LinkFunction {
 public:
  LinkFunction() = default;
  explicit LinkFunction(LinkKind kind);

  static LinkFunction linear() { return LinkFunction(LinkKind::Linear); }
  static LinkFunction logistic() { return LinkFunction(LinkKind::Logistic); }
  static LinkFunction probit() { return LinkFunction(LinkKind::Probit); }
  static LinkFunction sign() { return LinkFunction(LinkKind::Sign); }
  static LinkFunction tabulated(std::vector<double> knots, std::vector<double> values);

  LinkKind kind() const noexcept { return kind_; }

  /// True unless the link is Linear (real-valued responses).
  bool is_binary() const noexcept { return kind_ != LinkKind::Linear; }

  double operator()(double t) const;

 private:
  LinkKind kind_ = LinkKind::Logistic;
  std::vector<double> knots_;
  std::vector<double> values_;
};

double link_mean(const LinkFunction& link, double t);

}  // namespace sixlasso

#include "sixlasso/link.hpp"

#include <algorithm>
#include <cmath>

#include "sixlasso/error.hpp"

namespace sixlasso {

std::string_view to_string(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Linear: return "linear";
    case LinkKind::Logistic: return "logistic";
    case LinkKind::Probit: return "probit";
    case LinkKind::Sign: return "sign";
    case LinkKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

std::optional<LinkKind> parse_link_kind(std::string_view tag) noexcept {
  if (tag == "linear") return LinkKind::Linear;
  if (tag == "logistic") return LinkKind::Logistic;
  if (tag == "probit") return LinkKind::Probit;
  if (tag == "sign") return LinkKind::Sign;
  return std::nullopt;
}

LinkFunction::LinkFunction(LinkKind kind) : kind_(kind) {
  if (kind == LinkKind::Tabulated) {
    throw Error(ErrorCode::InvalidArgument,
                "tabulated links must be built with LinkFunction::tabulated");
  }
}

LinkFunction LinkFunction::tabulated(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "tabulated link needs at least two knots and one value per knot");
  }
  for (std::size_t j = 0; j < knots.size(); ++j) {
    if (!std::isfinite(knots[j]) || !std::isfinite(values[j])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated link entries must be finite");
    }
    if (values[j] < -1.0 || values[j] > 1.0) {
      throw Error(ErrorCode::LinkRangeError, "tabulated link values must lie in [-1, 1]");
    }
    if (j > 0 && !(knots[j] > knots[j - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated link knots must be strictly ascending");
    }
    if (j > 0 && values[j] < values[j - 1]) {
      throw Error(ErrorCode::InvalidArgument, "tabulated link values must be nondecreasing");
    }
  }
  LinkFunction link;
  link.kind_ = LinkKind::Tabulated;
  link.knots_ = std::move(knots);
  link.values_ = std::move(values);
  return link;
}

double LinkFunction::operator()(double t) const {
  switch (kind_) {
    case LinkKind::Linear:
      return t;
    case LinkKind::Logistic:
      // 2 e^t / (1 + e^t) - 1
      return std::tanh(0.5 * t);
    case LinkKind::Probit:
      // 2 Phi(t) - 1
      return std::erf(t / std::sqrt(2.0));
    case LinkKind::Sign:
      return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    case LinkKind::Tabulated: {
      if (t <= knots_.front()) return values_.front();
      if (t >= knots_.back()) return values_.back();
      const auto hi = std::upper_bound(knots_.begin(), knots_.end(), t);
      const auto j = static_cast<std::size_t>(hi - knots_.begin());
      const double w = (t - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
      return values_[j - 1] + w * (values_[j] - values_[j - 1]);
    }
  }
  return 0.0;
}

double link_mean(const LinkFunction& link, double t) { return link(t); }

}  // namespace sixlasso

#include "clcst/windows.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clcst/errors.hpp"

namespace clcst {

double dog_eval(double lambda, std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::exp(-r2 / (2.0 * lambda * lambda)) / (lambda * lambda) - std::exp(-0.5 * r2);
}

Window Window::gaussian(int n, double sigma) { return gaussian(n, std::vector<double>(n, sigma)); }

Window Window::gaussian(int n, std::vector<double> sigmas) {
  if (n < 1) throw DomainError("window dimension must be positive");
  if (sigmas.size() == 1) sigmas.assign(n, sigmas[0]);
  if (static_cast<int>(sigmas.size()) != n) throw DimensionMismatch("need one sigma per axis");
  for (double s : sigmas) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Gaussian sigma must be positive");
  }
  Window w;
  w.kind_ = Kind::gaussian;
  w.n_ = n;
  w.sigmas_ = std::move(sigmas);
  return w;
}

Window Window::dog(int n, double lambda) {
  if (n < 1) throw DomainError("window dimension must be positive");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("DOG lambda must lie in (0, 1)");
  Window w;
  w.kind_ = Kind::dog;
  w.n_ = n;
  w.lambda_ = lambda;
  return w;
}

Window Window::combine(double alpha, const Window& a, double beta, const Window& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("combined windows must share a dimension");
  Window w;
  w.kind_ = Kind::combination;
  w.n_ = a.n_;
  w.alpha_ = alpha;
  w.beta_ = beta;
  w.a_ = std::make_shared<const Window>(a);
  w.b_ = std::make_shared<const Window>(b);
  return w;
}

double Window::shape(std::span<const double> y) const {
  switch (kind_) {
    case Kind::gaussian: {
      double e = 0.0;
      for (int i = 0; i < n_; ++i) e += y[i] * y[i] / (sigmas_[i] * sigmas_[i]);
      return std::exp(-0.5 * e);
    }
    case Kind::dog:
      return dog_eval(lambda_, y.first(n_));
    case Kind::combination:
      return alpha_ * (*a_)(y) + beta_ * (*b_)(y);
  }
  return 0.0;
}

double Window::operator()(std::span<const double> y) const { return scale_ * shape(y); }

std::vector<Window::Atom> Window::atoms() const {
  std::vector<Atom> out;
  switch (kind_) {
    case Kind::gaussian:
      out.push_back({scale_, sigmas_});
      break;
    case Kind::dog:
      out.push_back({scale_ / (lambda_ * lambda_), std::vector<double>(n_, lambda_)});
      out.push_back({-scale_, std::vector<double>(n_, 1.0)});
      break;
    case Kind::combination:
      for (auto [c, w] : {std::pair{alpha_, a_}, std::pair{beta_, b_}}) {
        for (Atom at : w->atoms()) {
          at.weight *= scale_ * c;
          out.push_back(std::move(at));
        }
      }
      break;
  }
  return out;
}

double Window::integral() const {
  double total = 0.0;
  for (const Atom& a : atoms()) {
    double v = a.weight;
    for (double s : a.sigmas) v *= std::sqrt(2.0 * std::numbers::pi) * s;
    total += v;
  }
  return total;
}

double Window::l2_norm_squared() const {
  const auto at = atoms();
  double total = 0.0;
  for (const Atom& p : at) {
    for (const Atom& q : at) {
      double v = p.weight * q.weight;
      for (int i = 0; i < n_; ++i) {
        const double s = p.sigmas[i], t = q.sigmas[i];
        v *= std::sqrt(2.0 * std::numbers::pi) * s * t / std::sqrt(s * s + t * t);
      }
      total += v;
    }
  }
  return total;
}

double Window::l1_norm() const {
  const auto at = atoms();
  bool positive = true;
  double reach = 0.0;
  for (const Atom& a : at) {
    positive = positive && a.weight >= 0.0;
    for (double s : a.sigmas) reach = std::max(reach, s);
  }
  if (positive) return integral();
  // Midpoint rule on [-R, R]^n; the integrand is smooth except on the zero set.
  const double R = 9.0 * reach;
  const int m = n_ <= 2 ? 600 : (n_ == 3 ? 120 : 30);
  const double h = 2.0 * R / m;
  std::vector<int> idx(n_, 0);
  std::vector<double> y(n_);
  double total = 0.0;
  while (true) {
    for (int i = 0; i < n_; ++i) y[i] = -R + (idx[i] + 0.5) * h;
    total += std::abs((*this)(y));
    int a = n_ - 1;
    while (a >= 0 && ++idx[a] == m) idx[a--] = 0;
    if (a < 0) break;
  }
  return total * std::pow(h, n_);
}

Window Window::normalized() const {
  const double I = integral();
  const double size = std::sqrt(l2_norm_squared());
  if (std::abs(I) <= 1e-12 * std::max(size, 1e-300)) {
    throw ZeroIntegral("window " + describe() + " integrates to zero; unit normalization is impossible");
  }
  Window w = *this;
  w.scale_ = scale_ / I;
  w.unit_ = true;
  return w;
}

Window Window::scaled(double s) const {
  Window w = *this;
  w.scale_ *= s;
  w.unit_ = false;
  return w;
}

std::string Window::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::gaussian:
      os << "gaussian(sigma=";
      for (std::size_t i = 0; i < sigmas_.size(); ++i) os << (i ? "," : "") << sigmas_[i];
      os << ")";
      break;
    case Kind::dog:
      os << "dog(lambda=" << lambda_ << ")";
      break;
    case Kind::combination:
      os << alpha_ << "*" << a_->describe() << " + " << beta_ << "*" << b_->describe();
      break;
  }
  if (scale_ != 1.0) os << " x " << scale_;
  return os.str();
}

nlohmann::json Window::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::gaussian:
      j["kind"] = "gaussian";
      j["sigma"] = sigmas_;
      break;
    case Kind::dog:
      j["kind"] = "dog";
      j["lambda"] = lambda_;
      break;
    case Kind::combination:
      j["kind"] = "combination";
      j["alpha"] = alpha_;
      j["beta"] = beta_;
      j["first"] = a_->to_json();
      j["second"] = b_->to_json();
      break;
  }
  j["scale"] = scale_;
  j["normalization"] = unit_ ? "unit" : "raw";
  return j;
}

Window Window::from_json(const nlohmann::json& j, int n) {
  const std::string kind = j.value("kind", "gaussian");
  Window w = [&] {
    if (kind == "gaussian") {
      const auto& s = j.contains("sigma") ? j.at("sigma") : nlohmann::json(1.0);
      return s.is_array() ? gaussian(n, s.get<std::vector<double>>()) : gaussian(n, s.get<double>());
    }
    if (kind == "dog") return dog(n, j.value("lambda", 0.5));
    if (kind == "combination") {
      return combine(j.at("alpha").get<double>(), from_json(j.at("first"), n), j.at("beta").get<double>(),
                     from_json(j.at("second"), n));
    }
    throw FormatError("unknown window kind '" + kind + "'");
  }();
  // An explicit "unit" request wins over any stored scale.
  if (j.value("normalization", "raw") == "unit") return w.normalized();
  if (j.contains("scale")) w.scale_ = j.at("scale").get<double>();
  return w;
}

}  // namespace clcst

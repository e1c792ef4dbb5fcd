#include "sliceadm/economics.hpp"

#include <cmath>

#include "sliceadm/errors.hpp"

namespace sliceadm {

double annuity_factor(double beta, int periods) {
  double sum = 0.0;
  double w = 1.0;
  for (int k = 0; k < periods; ++k) {
    sum += w;
    w *= beta;
  }
  return sum;
}

double price(const ResourceVector& bundle, int period, const Catalog& catalog) {
  return catalog.price(bundle, period);
}

double own_revenue(const ResourceVector& bundle, const EconomicParams& params,
                   const ResourceSpace& space) {
  if (bundle.dimension() != params.own_revenue_rates.size()) {
    throw InvalidModel("own revenue rates do not match the resource dimension");
  }
  double q = 0.0;
  for (std::size_t i = 0; i < bundle.dimension(); ++i) {
    q += params.own_revenue_rates[i] * (static_cast<double>(bundle[i]) / space.resolution());
  }
  return q;
}

double pv_payments(const ResourceVector& bundle, int period, const EconomicParams& params,
                   const Catalog& catalog) {
  if (period < 1) throw InvalidModel("contract period must be >= 1");
  return catalog.price(bundle, period) * annuity_factor(params.beta, period);
}

double pv_own_revenue(const ResourceVector& bundle, int period, const EconomicParams& params,
                      const ResourceSpace& space) {
  return own_revenue(bundle, params, space) * annuity_factor(params.beta, period);
}

}  // namespace sliceadm

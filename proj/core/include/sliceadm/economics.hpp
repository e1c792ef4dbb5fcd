#pragma once

#include "sliceadm/catalog.hpp"
#include "sliceadm/market.hpp"
#include "sliceadm/resource.hpp"

namespace sliceadm {

/// Sum_{k=0}^{periods-1} beta^k: present value of a unit annuity-due.
double annuity_factor(double beta, int periods);

/// Periodic payment of a catalog option (strict lookup, 0 for null).
double price(const ResourceVector& bundle, int period, const Catalog& catalog);

/// q(bundle): revenue per period from running the bundle on own slices.
double own_revenue(const ResourceVector& bundle, const EconomicParams& params,
                   const ResourceSpace& space);

double pv_payments(const ResourceVector& bundle, int period, const EconomicParams& params,
                   const Catalog& catalog);

double pv_own_revenue(const ResourceVector& bundle, int period, const EconomicParams& params,
                      const ResourceSpace& space);

}  // namespace sliceadm

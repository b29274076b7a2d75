#include "casimir/breakdown.hpp"

#include <algorithm>

#include "casimir/eddy.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon.hpp"

namespace casimir {

EnergyBreakdown decompose(const DecompositionInput& in) {
  const MaterialParams& m = in.material;
  const Geometry& g = in.geometry;
  EnergyBreakdown out;
  out.ideal = ideal_casimir_energy_per_area(g);

  const LifshitzBreakdown lif =
      in.temperature ? free_energy_T(g, m, *in.temperature, in.quad) : casimir_energy_T0(g, m, in.quad);
  out.total = lif.total;
  out.total_te = lif.te;
  out.total_tm = lif.tm;
  out.finite_temperature = in.temperature.has_value();
  // Every error is expressed as an absolute error over |ideal| so that tiny
  // contributions (eddy TM) do not dominate through their relative error.
  double tol = 0.0;
  auto track = [&tol, &out](double value, double rel) {
    tol = std::max(tol, rel * std::abs(value) / std::abs(out.ideal));
  };
  track(lif.total, lif.achieved_tol);

  const Estimate pl = plasmon_energy(g, m, in.cutoff, in.quad);
  out.plasmon = pl.value;
  out.plasmon_asymptotic = plasmon_energy_asymptotic(g, m);
  track(pl.value, pl.achieved_tol);

  const EddyResult te = eddy_energy_T0(Polarization::TE, g, m, in.cutoff, in.quad);
  const EddyResult tm = eddy_energy_T0(Polarization::TM, g, m, in.cutoff, in.quad);
  out.eddy_te = te.value;
  out.eddy_tm = tm.value;
  out.no_cut = te.no_cut;
  track(te.value, te.achieved_tol);
  track(tm.value, tm.achieved_tol);

  if (in.temperature) {
    const EddyResult hot = eddy_free_energy_highT(Polarization::TE, g, m, *in.temperature, in.quad);
    const Estimate ref = plasma_highT_TE_reference(g, m, *in.temperature, in.quad);
    out.eddy_te_highT = hot.value;
    out.plasma_te_highT = ref.value;
    out.below_eddy_regime = m.has_cut() && !eddy_high_temperature_regime(m, *in.temperature);
    track(hot.value, hot.achieved_tol);
    track(ref.value, ref.achieved_tol);
  }

  out.remainder = out.total - out.plasmon - out.eddy_te - out.eddy_tm;
  out.eta_total = out.total / out.ideal;
  out.achieved_tol = tol;
  return out;
}

}  // namespace casimir

import math
import os
import sys

_pkg = os.environ.get("SWLAB_PACKAGE_DIR")
if _pkg and _pkg not in sys.path:
    sys.path.insert(0, _pkg)

import swlab


def test_constants():
    assert abs(swlab.zeta_three_halves() - 2.6123753486854883) < 1e-14
    lhs = math.exp(swlab.beta_c_exact()) * swlab.zeta_three_halves()
    assert abs(lhs - math.sqrt(2.0 * math.pi)) < 1e-12
    assert abs(swlab.closed_form_fn(2) - 1.0 / (4.0 * math.sqrt(math.pi))) < 1e-16
    assert swlab.survival_exact(2) == 0.375


def test_rng_determinism():
    a = swlab.RngStream(42, 3)
    b = swlab.RngStream(42, 3)
    assert [a.normal() for _ in range(5)] == [b.normal() for _ in range(5)]


def test_kernel_and_critical_point():
    k0 = swlab.transfer_kernel(0.0, 0, 16)
    assert abs(k0.value(2, 0, 0) / swlab.closed_form_fn(2) - 1.0) < 1e-4
    kt = swlab.transfer_kernel(0.2, 4, 64)
    bca = swlab.critical_beta_strip(kt)
    gap = math.log(0.2) + bca - swlab.beta_c_exact()
    assert 0.0 < gap < 0.5
    assert swlab.free_energy(kt, bca + 0.2) > 0.0
    assert swlab.free_energy(kt, bca - 0.2) == 0.0


def test_partition_and_sampling():
    rt = swlab.renewal_tables(swlab.beta_c_exact(), 64)
    assert rt.log_zc[0] == 0.0
    rng = swlab.RngStream(7, 0)
    cs = swlab.sample_contacts_renewal(rt, "f", rng)
    assert cs.times[0] == 0
    assert swlab.summarize_contacts(cs).count == len(cs.times)

    kt = swlab.transfer_kernel(0.25, 2, 16)
    st = swlab.survival_table(0.25, 2, 16)
    pin = swlab.make_constant_pinning(0.25, swlab.critical_beta_strip(kt))
    sp = swlab.strip_partition(pin, kt, st, 16)
    guard = swlab.leading_eigen(swlab.build_resolvent(kt, 0.0))
    cs2 = swlab.sample_contacts_markov_renewal(sp, kt, guard, 16, "c", rng)
    assert cs2.times[-1] == 16
    assert all(0.0 <= p <= 0.25 for p in cs2.positions)
    path = swlab.assemble_path(cs2, 0.25, rng)
    assert len(path.values) == 17
    assert path.X(1.0) == path.values[16] / math.sqrt(16.0)
    osc = swlab.oscillation_stat(path, 0.25)
    assert osc.gamma_tilde <= osc.gamma + 1e-12


def test_stats_surface():
    xs = [i / 1000.0 for i in range(1, 1001)]
    assert swlab.ks_statistic(xs, "uniform01", 0.0) < 0.01
    est = swlab.local_time_mgf([0.0, 1.0], 1.0)
    assert abs(est.value - 0.5 * (1.0 + math.e)) < 1e-12
    assert abs(swlab.ref_cdf("arcsine", 0.5, 1.0) - 0.5) < 1e-12


def test_acceptance_hooks_exposed():
    assert swlab.criterion_count() == 11
    assert isinstance(swlab.criterion_name(3), str)

// Python bindings for the strip wetting laboratory core. The Gaussian
// increment model is baked in; everything else mirrors the C++ surface.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swlab/accept.hpp"
#include "swlab/config.hpp"
#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/partition.hpp"
#include "swlab/pinning.hpp"
#include "swlab/rng.hpp"
#include "swlab/sampler.hpp"
#include "swlab/series.hpp"
#include "swlab/spectral.hpp"
#include "swlab/stats.hpp"
#include "swlab/version.hpp"

namespace py = pybind11;
using namespace swlab;

PYBIND11_MODULE(_swlab, m) {
  m.doc() = "strip wetting model laboratory (C++ core)";
  m.attr("__version__") = kVersion;

  // Exact constants and closed forms.
  m.def("zeta_three_halves", &zeta_three_halves);
  m.def("beta_c_exact", &beta_c_exact);
  m.def("closed_form_fn", &closed_form_fn, py::arg("n"));
  m.def("survival_exact", &survival_exact, py::arg("n"));
  m.def("local_time_b", &local_time_b);
  m.def("power_tail_sum", &power_tail_sum, py::arg("lam"), py::arg("N"));
  m.def("polylog_three_halves", &polylog_three_halves, py::arg("lam"));
  m.def("resolve_strip_width", &resolve_strip_width, py::arg("spec"),
        py::arg("N"));

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream"))
      .def("uniform01", &RngStream::uniform01)
      .def("normal", &RngStream::normal)
      .def("seek", &RngStream::seek, py::arg("counter"));

  py::class_<KernelTable>(m, "KernelTable")
      .def_readonly("a", &KernelTable::a)
      .def_readonly("M", &KernelTable::M)
      .def_readonly("n_max", &KernelTable::n_max)
      .def_readonly("L", &KernelTable::L)
      .def_readonly("xs", &KernelTable::xs)
      .def("value", &KernelTable::value, py::arg("n"), py::arg("i"),
           py::arg("j"))
      .def("eval", &KernelTable::eval, py::arg("n"), py::arg("i"),
           py::arg("j"))
      .def("index_zero", &KernelTable::index_zero)
      .def("index_a", &KernelTable::index_a)
      .def("index_mid", &KernelTable::index_mid, py::arg("i"));
  m.def(
      "transfer_kernel",
      [](double a, int M, int n_max, double h) {
        KernelOptions opts;
        opts.h = h;
        return transfer_kernel(gaussian_model(), a, M, n_max, opts);
      },
      py::arg("a"), py::arg("M"), py::arg("n_max"), py::arg("h") = 0.0625);

  py::class_<SurvivalTable>(m, "SurvivalTable")
      .def_readonly("a", &SurvivalTable::a)
      .def_readonly("M", &SurvivalTable::M)
      .def_readonly("n_max", &SurvivalTable::n_max)
      .def_readonly("xs", &SurvivalTable::xs)
      .def("value", &SurvivalTable::value, py::arg("n"), py::arg("i"))
      .def("eval", &SurvivalTable::eval, py::arg("n"), py::arg("i"))
      .def("index_zero", &SurvivalTable::index_zero)
      .def("index_a", &SurvivalTable::index_a);
  m.def(
      "survival_table",
      [](double a, int M, int n_max) {
        return survival(gaussian_model(), a, M, n_max);
      },
      py::arg("a"), py::arg("M"), py::arg("n_max"));

  py::class_<ResolventKernel>(m, "ResolventKernel")
      .def_readonly("lam", &ResolventKernel::lambda)
      .def_readonly("a", &ResolventKernel::a)
      .def_readonly("M", &ResolventKernel::M)
      .def_readonly("w", &ResolventKernel::w)
      .def_readonly("hs_value", &ResolventKernel::hs_value)
      .def_readonly("hs_bound", &ResolventKernel::hs_bound)
      .def("at", &ResolventKernel::at, py::arg("i"), py::arg("j"));
  m.def("build_resolvent", &build_resolvent, py::arg("table"), py::arg("lam"));

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("lam", &SpectralResult::lambda)
      .def_readonly("delta", &SpectralResult::delta)
      .def_readonly("V", &SpectralResult::V)
      .def_readonly("residual", &SpectralResult::residual)
      .def_readonly("iterations", &SpectralResult::iterations);
  m.def("leading_eigen", &leading_eigen, py::arg("kernel"),
        py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
  m.def("critical_beta_strip", &critical_beta_strip, py::arg("table"));
  m.def("free_energy", &free_energy, py::arg("table"), py::arg("beta"),
        py::arg("lambda_tol") = 1e-12);

  py::class_<PinningFunction>(m, "PinningFunction")
      .def_readonly("a", &PinningFunction::a)
      .def_readonly("beta", &PinningFunction::beta)
      .def("eval", &PinningFunction::eval, py::arg("x"))
      .def("label", &PinningFunction::label);
  m.def("make_constant_pinning", &make_constant_pinning, py::arg("a"),
        py::arg("beta"));
  m.def("make_smooth_bump_pinning", &make_smooth_bump_pinning, py::arg("a"));
  m.def("make_zero_pinning", &make_zero_pinning, py::arg("a"));
  m.def("integral_exp_pinning", &integral_exp_pinning, py::arg("pinning"));
  m.def("condition_A_score", &condition_A_score, py::arg("pinning"));

  py::class_<RenewalTables>(m, "RenewalTables")
      .def_readonly("beta", &RenewalTables::beta)
      .def_readonly("N", &RenewalTables::N)
      .def_readonly("log_zc", &RenewalTables::log_zc)
      .def_readonly("log_zf", &RenewalTables::log_zf)
      .def_readonly("log_p", &RenewalTables::log_p);
  m.def("renewal_tables", &renewal_tables, py::arg("beta"), py::arg("N"));
  m.def("renewal_gap_tail", &renewal_gap_tail, py::arg("n"));
  m.def("renewal_partition_enum", &oracle::renewal_partition_enum,
        py::arg("beta"), py::arg("N"), py::arg("alpha"));

  py::class_<StripPartitionTable>(m, "StripPartitionTable")
      .def_readonly("a", &StripPartitionTable::a)
      .def_readonly("M", &StripPartitionTable::M)
      .def_readonly("N", &StripPartitionTable::N)
      .def_readonly("log_zc_total", &StripPartitionTable::log_zc_total)
      .def_readonly("log_zf_total", &StripPartitionTable::log_zf_total)
      .def("log_zc", &StripPartitionTable::log_zc, py::arg("m"),
           py::arg("idx"))
      .def("log_zf", &StripPartitionTable::log_zf, py::arg("m"),
           py::arg("idx"))
      .def("position", &StripPartitionTable::position, py::arg("idx"));
  m.def("strip_partition", &strip_partition, py::arg("pinning"),
        py::arg("table"), py::arg("survival"), py::arg("N"));

  py::class_<DensityRatio>(m, "DensityRatio")
      .def_readonly("log_strip", &DensityRatio::log_strip)
      .def_readonly("log_renewal", &DensityRatio::log_renewal)
      .def_readonly("log_ratio", &DensityRatio::log_ratio);
  m.def("contact_set_density_ratio", &contact_set_density_ratio,
        py::arg("strip"), py::arg("table"), py::arg("renewal"),
        py::arg("times"), py::arg("alpha"));

  py::class_<ContactSet>(m, "ContactSet")
      .def_readonly("N", &ContactSet::N)
      .def_readonly("alpha", &ContactSet::alpha)
      .def_readonly("times", &ContactSet::times)
      .def_readonly("positions", &ContactSet::positions);
  m.def("sample_contacts_renewal", &sample_contacts_renewal, py::arg("tables"),
        py::arg("alpha"), py::arg("rng"));
  m.def("sample_contacts_markov_renewal", &sample_contacts_markov_renewal,
        py::arg("strip"), py::arg("table"), py::arg("guard"), py::arg("n"),
        py::arg("alpha"), py::arg("rng"));
  m.def(
      "sample_excursion",
      [](double a, double x, double y, int n, RngStream& rng) {
        return sample_excursion(gaussian_model(), a, x, y, n, rng);
      },
      py::arg("a"), py::arg("x"), py::arg("y"), py::arg("n"), py::arg("rng"));

  py::class_<PathSample>(m, "PathSample")
      .def_readonly("N", &PathSample::N)
      .def_readonly("alpha", &PathSample::alpha)
      .def_readonly("a", &PathSample::a)
      .def_readonly("values", &PathSample::values)
      .def_readonly("contact_times", &PathSample::contact_times)
      .def("X", &PathSample::X, py::arg("t"));
  m.def(
      "assemble_path",
      [](const ContactSet& contacts, double a, RngStream& rng) {
        return assemble_path(contacts, gaussian_model(), a, rng);
      },
      py::arg("contacts"), py::arg("a"), py::arg("rng"));

  py::class_<ZeroSetSummary>(m, "ZeroSetSummary")
      .def_readonly("N", &ZeroSetSummary::N)
      .def_readonly("count", &ZeroSetSummary::count)
      .def_readonly("last_zero", &ZeroSetSummary::last_zero)
      .def_readonly("scaled_count", &ZeroSetSummary::scaled_count)
      .def_readonly("largest_gap", &ZeroSetSummary::largest_gap);
  m.def("summarize_contacts", &summarize_contacts, py::arg("contacts"));

  m.def(
      "ks_statistic",
      [](std::vector<double> xs, const std::string& law, double param) {
        return ks_statistic(std::move(xs), ref_law_from_string(law), param);
      },
      py::arg("xs"), py::arg("law"), py::arg("param"));
  m.def(
      "ref_cdf",
      [](const std::string& law, double x, double param) {
        return ref_cdf(ref_law_from_string(law), x, param);
      },
      py::arg("law"), py::arg("x"), py::arg("param"));

  py::class_<MgfEstimate>(m, "MgfEstimate")
      .def_readonly("value", &MgfEstimate::value)
      .def_readonly("std_error", &MgfEstimate::std_error)
      .def_readonly("samples", &MgfEstimate::samples);
  m.def(
      "local_time_mgf",
      [](const std::vector<double>& scaled, double eps) {
        return local_time_mgf(scaled, eps);
      },
      py::arg("scaled_counts"), py::arg("eps"));

  py::class_<OscillationStat>(m, "OscillationStat")
      .def_readonly("gamma", &OscillationStat::gamma)
      .def_readonly("gamma_tilde", &OscillationStat::gamma_tilde);
  m.def("oscillation_stat", &oscillation_stat, py::arg("path"),
        py::arg("delta"));

  // Acceptance suite.
  py::class_<accept::CheckLine>(m, "CheckLine")
      .def_readonly("name", &accept::CheckLine::name)
      .def_readonly("N", &accept::CheckLine::N)
      .def_readonly("M", &accept::CheckLine::M)
      .def_readonly("statistic", &accept::CheckLine::statistic)
      .def_readonly("threshold", &accept::CheckLine::threshold)
      .def_readonly("relation", &accept::CheckLine::relation)
      .def_readonly("pass_", &accept::CheckLine::pass);
  py::class_<accept::CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &accept::CriterionResult::id)
      .def_readonly("name", &accept::CriterionResult::name)
      .def_readonly("pass_", &accept::CriterionResult::pass)
      .def_readonly("seconds", &accept::CriterionResult::seconds)
      .def_readonly("lines", &accept::CriterionResult::lines)
      .def_readonly("error", &accept::CriterionResult::error);
  m.def("criterion_count", &accept::criterion_count);
  m.def("criterion_name", &accept::criterion_name, py::arg("id"));
  m.def("run_criterion", &accept::run_criterion, py::arg("id"),
        py::call_guard<py::gil_scoped_release>());
}

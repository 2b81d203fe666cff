// Python bindings for the main operations.  Reals cross the boundary as
// doubles; exact values as python ints / Fractions where it matters.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcdsum/asymptotic.hpp"
#include "gcdsum/report.hpp"
#include "gcdsum/series.hpp"

#include <sstream>

namespace py = pybind11;
using namespace gcdsum;

namespace {

PrecisionContext make_ctx(int digits) { return PrecisionContext(digits); }

SweepParams build_params(int s, std::optional<double> a, int m, int r,
                         const std::string& family) {
    SweepParams p;
    p.s = s;
    p.a = a;
    p.m = m;
    p.r = r;
    auto fam = family_from_token(family);
    if (!fam) throw std::domain_error("unknown family: " + family);
    p.family = *fam;
    return p;
}

FunctionId function_from_name(const std::string& name, double expo) {
    if (name == "mobius") return FunctionId::mobius();
    if (name == "abs_mobius") return FunctionId::abs_mobius();
    if (name == "mangoldt") return FunctionId::mangoldt();
    if (name == "tau") return FunctionId::tau();
    if (name == "one") return FunctionId::one();
    if (name == "id") return FunctionId::id_pow(expo);
    if (name == "sigma") return FunctionId::sigma_pow(expo);
    if (name == "phi") return FunctionId::jordan_phi(expo);
    if (name == "psi") return FunctionId::dedekind_psi(expo);
    throw std::domain_error("unknown function: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "gcd-sum weighted average verification core";

    py::register_exception<ResourceCapError>(mod, "ResourceCapError");

    py::class_<PrecisionContext>(mod, "PrecisionContext")
        .def(py::init<int>(), py::arg("digits") = 40)
        .def_property_readonly("digits", &PrecisionContext::digits)
        .def_property_readonly("identity_tol",
                               [](const PrecisionContext& c) {
                                   return c.identity_tol().to_double();
                               })
        .def_property_readonly("euler_gamma", [](const PrecisionContext& c) {
            return c.euler_gamma().to_double();
        });

    py::class_<ArithTable>(mod, "ArithTable")
        .def_property_readonly("name", &ArithTable::name)
        .def("__len__", &ArithTable::size)
        .def("value",
             [](const ArithTable& t, uint64_t n) {
                 if (n < 1 || n > t.size()) throw py::index_error("index outside 1..N");
                 return t.value(n, 64).to_double();
             })
        .def("int_value",
             [](const ArithTable& t, uint64_t n) {
                 if (n < 1 || n > t.size()) throw py::index_error("index outside 1..N");
                 if (t.kind() != ArithTable::Kind::ExactInt)
                     throw py::value_error("table is not exact-integer valued");
                 return py::cast(t.int_at(n).get_str());
             })
        .def("values", [](const ArithTable& t) {
            std::vector<double> v;
            v.reserve(t.size());
            for (uint64_t n = 1; n <= t.size(); ++n) v.push_back(t.value(n, 64).to_double());
            return v;
        });

    mod.def(
        "sieve",
        [](const std::string& name, uint64_t n, double expo, int digits) {
            auto ctx = make_ctx(digits);
            return sieve(function_from_name(name, expo), n, ctx);
        },
        py::arg("name"), py::arg("n"), py::arg("expo") = 1.0, py::arg("digits") = 40);

    mod.def("dirichlet_convolve", &dirichlet_convolve, py::arg("f"), py::arg("g"));
    mod.def("gcd_spower", &gcd_spower, py::arg("j"), py::arg("k"), py::arg("s"));
    mod.def(
        "cohen_ramanujan",
        [](uint64_t j, uint64_t k, int s) { return py::cast(cohen_ramanujan(j, k, s).get_str()); },
        py::arg("j"), py::arg("k"), py::arg("s"));
    mod.def(
        "pillai",
        [](uint64_t n, int digits) { return pillai(n, nullptr, make_ctx(digits)).to_double(); },
        py::arg("n"), py::arg("digits") = 40);

    mod.def(
        "log_gamma",
        [](double x, int digits) {
            auto ctx = make_ctx(digits);
            return log_gamma(ctx.real(x)).to_double();
        },
        py::arg("x"), py::arg("digits") = 40);
    mod.def(
        "zeta",
        [](double sigma, int deriv, int digits) {
            auto ctx = make_ctx(digits);
            return deriv ? zeta_deriv(sigma, ctx).to_double() : zeta(sigma, ctx).to_double();
        },
        py::arg("sigma"), py::arg("deriv") = 0, py::arg("digits") = 40);
    mod.def(
        "bernoulli_number",
        [](int n) {
            auto b = bernoulli_number(n);
            return py::make_tuple(py::cast(b.get_num().get_str()),
                                  py::cast(b.get_den().get_str()));
        },
        py::arg("n"));
    mod.def(
        "bernoulli_poly",
        [](int m, double x, int digits) {
            auto ctx = make_ctx(digits);
            return bernoulli_poly(m, ctx.real(x)).to_double();
        },
        py::arg("m"), py::arg("x"), py::arg("digits") = 40);
    mod.def(
        "theta_saw",
        [](double x, int digits) { return theta_saw(make_ctx(digits).real(x)).to_double(); },
        py::arg("x"), py::arg("digits") = 40);

    mod.def(
        "A_lhs",
        [](double x, int s, std::optional<double> a, const std::string& family,
           const std::string& mode, int digits) {
            auto ctx = make_ctx(digits);
            auto p = build_params(s, a, 1, 1, family);
            return A_lhs(x, p, mode == "direct" ? SumMode::Direct : SumMode::Fast, ctx)
                .to_double();
        },
        py::arg("x"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("family") = "phi_s", py::arg("mode") = "fast", py::arg("digits") = 40);
    mod.def(
        "H_lhs",
        [](double x, int s, std::optional<double> a, int m, const std::string& family,
           int digits) {
            auto ctx = make_ctx(digits);
            return H_lhs(x, build_params(s, a, m, 1, family), ctx).to_double();
        },
        py::arg("x"), py::arg("s") = 2, py::arg("a") = py::none(), py::arg("m") = 1,
        py::arg("family") = "phi_s", py::arg("digits") = 40);
    mod.def(
        "M_lhs",
        [](double x, int s, std::optional<double> a, int r, const std::string& family,
           int digits) {
            auto ctx = make_ctx(digits);
            return M_lhs(x, build_params(s, a, 1, r, family), SumMode::Fast, ctx).to_double();
        },
        py::arg("x"), py::arg("s") = 2, py::arg("a") = py::none(), py::arg("r") = 1,
        py::arg("family") = "phi_s", py::arg("digits") = 40);

    mod.def(
        "verify_identity",
        [](const std::string& which, int s, std::optional<double> a, int m, int r,
           const std::string& family, uint64_t x_max, int digits) {
            auto kind = identity_from_token(which);
            if (!kind) throw std::domain_error("unknown identity: " + which);
            auto ctx = make_ctx(digits);
            auto p = build_params(s, a, m, r, family);
            for (uint64_t x = 1; x <= x_max; ++x) p.x_grid.push_back(x);
            auto rep = verify_identity(*kind, p, ctx);
            py::list rows;
            for (const auto& row : rep.rows)
                rows.append(py::dict(
                    py::arg("x") = row.x, py::arg("lhs") = row.lhs.to_double(),
                    py::arg("rhs") = row.rhs.to_double(),
                    py::arg("abs_residual") = row.abs_residual.to_double(),
                    py::arg("tolerance") = row.tolerance.to_double(),
                    py::arg("pass") = row.pass));
            return py::dict(py::arg("all_pass") = rep.all_pass(), py::arg("rows") = rows,
                            py::arg("mode") = rep.mode, py::arg("digits") = rep.digits);
        },
        py::arg("which"), py::arg("s") = 2, py::arg("a") = py::none(), py::arg("m") = 1,
        py::arg("r") = 1, py::arg("family") = "phi_s", py::arg("x_max") = 50,
        py::arg("digits") = 40);

    mod.def(
        "delta", [](double x, int digits) { return delta(x, make_ctx(digits)).to_double(); },
        py::arg("x"), py::arg("digits") = 40);
    mod.def(
        "delta_a",
        [](double x, double a, int digits) { return delta_a(x, a, make_ctx(digits)).to_double(); },
        py::arg("x"), py::arg("a"), py::arg("digits") = 40);
    mod.def(
        "d_correction",
        [](double x, int s, const std::string& variant, int digits) {
            return d_correction(x, s,
                                variant == "abs_mobius" ? DVariant::AbsMobius : DVariant::Mobius,
                                make_ctx(digits))
                .to_double();
        },
        py::arg("x"), py::arg("s") = 2, py::arg("variant") = "mobius", py::arg("digits") = 40);
    mod.def(
        "main_term",
        [](const std::string& theorem, double x, int s, std::optional<double> a, int m,
           int digits) {
            auto tag = theorem_from_token(theorem);
            if (!tag) throw std::domain_error("unknown theorem tag: " + theorem);
            auto ctx = make_ctx(digits);
            return main_term(*tag, x, build_params(s, a, m, 1, "phi_s"), ctx).to_double();
        },
        py::arg("theorem"), py::arg("x"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("m") = 1, py::arg("digits") = 40);
    mod.def(
        "residual_series",
        [](const std::string& theorem, int s, std::optional<double> a, int m, uint64_t x_min,
           uint64_t x_max, double ratio, int digits) {
            auto tag = theorem_from_token(theorem);
            if (!tag) throw std::domain_error("unknown theorem tag: " + theorem);
            auto ctx = make_ctx(digits);
            auto grid = make_geometric_grid(x_min, x_max, ratio);
            auto series = residual_series(*tag, build_params(s, a, m, 1, "phi_s"), grid, ctx);
            auto env = envelope_test(series);
            py::list values;
            for (const auto& v : series.values) values.append(v.to_double());
            return py::dict(py::arg("grid") = series.grid, py::arg("values") = values,
                            py::arg("claimed_exponent") = series.claimed_exponent,
                            py::arg("log_power") = series.log_factor_power,
                            py::arg("monotone_ok") = env.monotone_ok,
                            py::arg("anchored_ok") = env.anchored_ok,
                            py::arg("fitted_slope") = env.fitted_slope);
        },
        py::arg("theorem"), py::arg("s") = 2, py::arg("a") = py::none(), py::arg("m") = 1,
        py::arg("x_min") = 100, py::arg("x_max") = 10000, py::arg("ratio") = 1.3,
        py::arg("digits") = 40);

    mod.def(
        "K_truncated",
        [](double w, uint64_t n, int s, std::optional<double> a, const std::string& family,
           int digits) {
            auto ctx = make_ctx(digits);
            return K_truncated(w, n, build_params(s, a, 1, 1, family), ctx).to_double();
        },
        py::arg("w"), py::arg("n"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("family") = "phi_s", py::arg("digits") = 40);
    mod.def(
        "K_closed",
        [](double w, int s, std::optional<double> a, const std::string& family, int digits) {
            auto ctx = make_ctx(digits);
            return K_closed(w, build_params(s, a, 1, 1, family), ctx).to_double();
        },
        py::arg("w"), py::arg("s") = 2, py::arg("a") = py::none(), py::arg("family") = "phi_s",
        py::arg("digits") = 40);
    mod.def(
        "L_truncated",
        [](double w, int m, uint64_t n, int s, std::optional<double> a,
           const std::string& family, int digits) {
            auto ctx = make_ctx(digits);
            return L_truncated(w, m, n, build_params(s, a, m, 1, family), ctx).to_double();
        },
        py::arg("w"), py::arg("m"), py::arg("n"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("family") = "phi_s", py::arg("digits") = 40);
    mod.def(
        "L_closed",
        [](double w, int m, int s, std::optional<double> a, const std::string& family,
           int digits) {
            auto ctx = make_ctx(digits);
            return L_closed(w, m, build_params(s, a, m, 1, family), ctx).to_double();
        },
        py::arg("w"), py::arg("m"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("family") = "phi_s", py::arg("digits") = 40);
    mod.def(
        "tail_bound",
        [](double w, uint64_t n, int s, std::optional<double> a, const std::string& family,
           const std::string& series, int m, int digits) {
            auto ctx = make_ctx(digits);
            auto p = build_params(s, a, m, 1, family);
            return series == "L" ? nu_tail_bound(w, m, n, p, ctx).to_double()
                                 : kappa_tail_bound(w, n, p, ctx).to_double();
        },
        py::arg("w"), py::arg("n"), py::arg("s") = 2, py::arg("a") = py::none(),
        py::arg("family") = "phi_s", py::arg("series") = "K", py::arg("m") = 1,
        py::arg("digits") = 40);

    mod.attr("__version__") = GCDSUM_VERSION;
}

// behalg: identification, sum/intersection, simulation and membership from files.

#include <behalg/behalg.hpp>
#include <behalg/io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace behalg;

enum Exit { kOk = 0, kIo = 1, kInconsistent = 2, kUncontrollable = 3, kNonMember = 4, kInternal = 5 };

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::InvalidRepresentation:
        case ErrorKind::Precondition: return kIo;
        case ErrorKind::InconsistentData: return kInconsistent;
        case ErrorKind::Uncontrollable: return kUncontrollable;
        case ErrorKind::AlgorithmFailure:
        case ErrorKind::NumericFailure: return kInternal;
    }
    return kInternal;
}

struct Options {
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output;
    std::string method = "auto";
    Index length = 100;
    std::vector<std::string> files;

    ToleranceConfig cfg() const {
        ToleranceConfig c;
        if (tol) c.rel_rank_tol = *tol;
        c.validate();
        return c;
    }
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) fail(ErrorKind::InvalidInput, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

Json complexity_json(const Complexity& c) {
    return Json{{"q", c.q}, {"m", c.m}, {"p", c.p}, {"n", c.n}, {"lag", c.lag}};
}

std::string complexity_plain(const Complexity& c) {
    std::ostringstream s;
    s << "q=" << c.q << " m=" << c.m << " n=" << c.n << " p=" << c.p << " lag=" << c.lag;
    return s.str();
}

Json poles_json(const std::vector<Complex>& roots) {
    Json arr = Json::array();
    for (const Complex& r : roots) {
        const double re = r.real() == 0.0 ? 0.0 : r.real();
        const double im = std::abs(r.imag()) < 1e-12 * std::max(1.0, std::abs(r)) ? 0.0 : r.imag();
        arr.push_back(Json::array({re, im}));
    }
    return arr;
}

int cmd_complexity(const Options& o) {
    const ToleranceConfig cfg = o.cfg();
    const Trajectory w = read_trajectory_csv(o.files.at(0));
    ComplexityReport rep;
    try {
        rep = complexity_report(w, cfg);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InconsistentData) {
            std::cerr << "error: trajectory inconsistent with exact LTI model\n";
            return kInconsistent;
        }
        throw;
    }
    Output out(o.output);
    if (o.format == "plain") {
        out.stream() << complexity_plain(rep.complexity) << " L=" << rep.window << " rank_L=" << rep.rank_L
                     << " rank_L_minus_1=" << rep.rank_L_minus_1 << "\n";
    } else {
        Json j = complexity_json(rep.complexity);
        j["L"] = rep.window;
        j["rank_L"] = rep.rank_L;
        j["rank_L_minus_1"] = rep.rank_L_minus_1;
        out.stream() << j.dump(2) << "\n";
    }
    return kOk;
}

enum class Op { Sum, Intersect };

int cmd_operation(const Options& o, Op op) {
    const ToleranceConfig cfg = o.cfg();
    const Behavior a = read_behavior_json(o.files.at(0), cfg);
    const Behavior b = read_behavior_json(o.files.at(1), cfg);
    if (a.q() != b.q()) fail(ErrorKind::InvalidInput, "behaviors have different numbers of variables");

    const bool kernel_route =
        o.method == "kernel" || (o.method == "auto" && (a.kernel() || a.data() || b.kernel() || b.data()));
    OpResult res = op == Op::Sum ? (kernel_route ? sum_kernel(a, b, cfg) : sum_image(a, b, cfg))
                                 : (kernel_route ? intersect_kernel(a, b, cfg) : intersect_image(a, b, cfg));

    // The complementary operation, for the dimension identity.
    const Behavior other = op == Op::Sum ? intersect_kernel(a, b, cfg).behavior : sum_kernel(a, b, cfg).behavior;
    const DimensionIdentity dims = op == Op::Sum ? dimension_identity(a, b, res.behavior, other, cfg)
                                                 : dimension_identity(a, b, other, res.behavior, cfg);
    if (!dims.holds()) {
        std::cerr << "error: dimension identity violated at L=" << dims.L << ": " << dims.dim_sum << " + "
                  << dims.dim_intersection << " != " << dims.dim_a << " + " << dims.dim_b << "\n";
        return kInternal;
    }

    const MatPoly kernel = kernel_of(res.behavior, cfg);
    const std::vector<Complex> pole_list = poles(kernel, cfg);
    const Complexity& c = res.behavior.complexity();
    const bool idempotent = behaviors_equal(a, b, cfg);

    Output out(o.output);
    if (o.format == "plain") {
        std::ostream& s = out.stream();
        s << "method=" << to_string(res.method) << " chosen_L=" << res.chosen_L << "\n";
        s << complexity_plain(c) << "\n";
        if (res.behavior.kernel()) {
            const MatPoly& r = *res.behavior.kernel();
            for (Index i = 0; i < r.rows(); ++i) {
                s << "kernel row " << (i + 1) << ":";
                for (int k = 0; k <= r.degree(); ++k)
                    for (Index jj = 0; jj < r.cols(); ++jj) s << " " << format_double(r.coeff(k)(i, jj));
                s << "\n";
            }
        }
        s << "poles:";
        for (const Complex& p : pole_list) s << " " << format_double(p.real()) << (p.imag() >= 0 ? "+" : "") << format_double(p.imag()) << "i";
        s << "\n";
        if (res.diagnostics.zero_behavior) s << "zero behavior\n";
        if (res.diagnostics.trivial) s << "trivial (all variables free)\n";
        if (idempotent) s << "idempotent\n";
        return kOk;
    }

    Json j = behavior_to_json(res.behavior);
    j["complexity"] = complexity_json(c);
    j["poles"] = poles_json(pole_list);
    Json dims_json = Json::array();
    for (const auto& [L, d] : res.diagnostics.kernel_dims) dims_json.push_back(Json::array({L, d}));
    j["diagnostics"] = Json{{"method", std::string(to_string(res.method))},
                            {"chosen_L", res.chosen_L},
                            {"kernel_dims", dims_json},
                            {"idempotent", idempotent},
                            {"zero_behavior", res.diagnostics.zero_behavior},
                            {"trivial", res.diagnostics.trivial},
                            {"common_factor_degree", res.diagnostics.common_factor_degree},
                            {"dimension_identity",
                             Json{{"L", dims.L},
                                  {"a", dims.dim_a},
                                  {"b", dims.dim_b},
                                  {"sum", dims.dim_sum},
                                  {"intersection", dims.dim_intersection}}}};
    out.stream() << j.dump(2) << "\n";
    return kOk;
}

int cmd_simulate(const Options& o) {
    const ToleranceConfig cfg = o.cfg();
    const Behavior b = read_behavior_json(o.files.at(0), cfg);
    const MatPoly r = minimal_kernel(kernel_of(b, cfg), cfg);
    const SynthesizedTrajectory syn = random_trajectory_from_kernel(r, o.length, o.seed, cfg);
    if (syn.zero_behavior) std::cerr << "note: zero behavior, only the zero trajectory exists\n";
    Output out(o.output);
    write_trajectory_csv(out.stream(), syn.trajectory);
    return kOk;
}

int cmd_member(const Options& o) {
    const ToleranceConfig cfg = o.cfg();
    const Trajectory w = read_trajectory_csv(o.files.at(0));
    const Behavior b = read_behavior_json(o.files.at(1), cfg);
    const Membership m = membership(w, b, cfg);
    Output out(o.output);
    if (o.format == "plain") {
        out.stream() << (m.member ? "member" : "non-member") << " residual=" << format_double(m.residual) << "\n";
    } else {
        out.stream() << Json{{"member", m.member}, {"residual", m.residual}}.dump(2) << "\n";
    }
    return m.member ? kOk : kNonMember;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum and intersection of linear time-invariant behaviors"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "relative rank tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "plain"}));
        sub->add_option("-o,--output", o.output, "write to a file instead of stdout");
    };

    CLI::App* complexity = app.add_subcommand("complexity", "inputs, order and lag of a trajectory");
    complexity->add_option("trajectory", o.files, "trajectory CSV")->required()->expected(1);
    common(complexity);

    CLI::App* sum = app.add_subcommand("sum", "sum of two behaviors");
    CLI::App* intersect = app.add_subcommand("intersect", "intersection of two behaviors");
    for (CLI::App* sub : {sum, intersect}) {
        sub->add_option("behaviors", o.files, "two behavior JSON files")->required()->expected(2);
        sub->add_option("--method", o.method, "kernel, image or auto")->check(CLI::IsMember({"kernel", "image", "auto"}));
        common(sub);
    }

    CLI::App* simulate = app.add_subcommand("simulate", "random trajectory of a behavior");
    simulate->add_option("behavior", o.files, "behavior JSON")->required()->expected(1);
    simulate->add_option("--length", o.length, "number of samples")->check(CLI::PositiveNumber);
    common(simulate);

    CLI::App* member = app.add_subcommand("member", "check that a trajectory belongs to a behavior");
    member->add_option("files", o.files, "trajectory CSV and behavior JSON")->required()->expected(2);
    common(member);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kIo;
    }

    try {
        if (complexity->parsed()) return cmd_complexity(o);
        if (sum->parsed()) return cmd_operation(o, Op::Sum);
        if (intersect->parsed()) return cmd_operation(o, Op::Intersect);
        if (simulate->parsed()) return cmd_simulate(o);
        if (member->parsed()) return cmd_member(o);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kIo;
}

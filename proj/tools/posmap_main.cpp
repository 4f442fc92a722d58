// posmap: analyze linear maps on M_d from the command line. JSON in, JSON
// out on stdout; human-readable summaries go to stderr under --verbose.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "posmap/json_io.hpp"

using namespace posmap;

namespace {

struct GlobalOpts {
    std::string output;
    bool verbose = false;
};

void emit(const Json& j, const GlobalOpts& opts) {
    const std::string text = j.dump() + "\n";
    if (opts.output.empty() || opts.output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(opts.output);
        if (!out) throw NumericalError("cannot open output file: " + opts.output);
        out << text;
    }
}

void note(const GlobalOpts& opts, const std::string& line) {
    if (opts.verbose) std::cerr << line << "\n";
}

LinearMap load_map(const std::string& path) { return map_from_json(load_json_file(path), path); }

DensityMatrix load_state(const std::string& path) {
    return DensityMatrix::validated(matrix_from_json(load_json_file(path), path));
}

std::string fmt_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.6f%+.6fi", z.real(), z.imag());
    return buf;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

void add_convert(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("convert", "convert a map between representations");
    auto to = std::make_shared<std::string>();
    auto basis = std::make_shared<std::string>("matrix_units");
    auto input = std::make_shared<std::string>();
    cmd->add_option("--to", *to, "target representation: transfer|choi|aform|kraus")
        ->required()
        ->check(CLI::IsMember({"transfer", "choi", "aform", "kraus"}));
    cmd->add_option("--basis", *basis,
                    "basis for transfer/aform output (matrix_units, "
                    "gell_mann_with_identity, fourier_diagonal_plus_offdiag)");
    cmd->add_option("map", *input, "map JSON file or - for stdin")->required();
    cmd->callback([&opts, to, basis, input] {
        const LinearMap phi = load_map(*input);
        LinearMap out = [&]() -> LinearMap {
            const RepKind kind = rep_kind_from_string(*to);
            switch (kind) {
                case RepKind::transfer:
                    return LinearMap(
                        phi.to_transfer(make_basis(basis_kind_from_string(*basis), phi.dim())));
                case RepKind::choi:
                    return LinearMap(phi.to_choi());
                case RepKind::aform:
                    return LinearMap(
                        phi.to_aform(make_basis(basis_kind_from_string(*basis), phi.dim())));
                case RepKind::kraus:
                    return LinearMap(kraus_from_choi(phi));
            }
            throw NumericalError("unreachable");
        }();
        note(opts, "converted d=" + std::to_string(phi.dim()) + " map to " + *to);
        emit(map_to_json(out), opts);
    });
}

void add_check(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("check", "test map properties");
    struct Flags {
        bool cp = false, ccp = false, unital = false, tp = false, selfadjoint = false;
        int positive_sample = 0;
        std::uint64_t seed = 0;
        std::string input;
    };
    auto f = std::make_shared<Flags>();
    cmd->add_flag("--cp", f->cp, "complete positivity via the Choi matrix");
    cmd->add_flag("--ccp", f->ccp, "complete copositivity");
    cmd->add_flag("--unital", f->unital, "phi(I) = I");
    cmd->add_flag("--tp", f->tp, "trace preservation");
    cmd->add_flag("--selfadjoint", f->selfadjoint, "phi(a^dag) = phi(a)^dag");
    cmd->add_option("--positive-sample", f->positive_sample,
                    "sample N random pure states to falsify positivity");
    cmd->add_option("--seed", f->seed, "seed for --positive-sample");
    cmd->add_option("map", f->input, "map JSON file or - for stdin")->required();
    cmd->callback([&opts, f] {
        const LinearMap phi = load_map(f->input);
        Json report = Json::object();
        if (f->cp) {
            const CpReport cp = is_completely_positive(phi);
            report["cp"] = cp.cp;
            report["min_choi_eig"] = cp.min_choi_eig;
            if (!cp.cp && !cp.reason.empty()) report["cp_reason"] = cp.reason;
        }
        if (f->ccp) report["ccp"] = is_completely_copositive(phi);
        if (f->cp && f->ccp && report["cp"].get<bool>() && report["ccp"].get<bool>())
            report["decomposable"] = true;
        if (f->unital) report["unital"] = is_unital(phi);
        if (f->tp) report["tp"] = is_trace_preserving(phi);
        if (f->selfadjoint) report["selfadjoint"] = is_selfadjoint(phi);
        if (f->positive_sample > 0) {
            const FalsifyResult r = positivity_falsify(phi, f->positive_sample, f->seed);
            Json sample{{"counterexample_found", r.found},
                        {"trials", r.trials},
                        {"seed", r.seed}};
            if (r.found) {
                sample["state"] = vector_to_json(r.state);
                sample["min_output_eig"] = r.min_output_eig;
            }
            report["positive_sample"] = std::move(sample);
        }
        for (const auto& [key, value] : report.items())
            note(opts, "  " + key + ": " + value.dump());
        emit(report, opts);
    });
}

void add_spectrum(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("spectrum", "transfer-matrix eigenvalues and the PF bound");
    auto input = std::make_shared<std::string>();
    cmd->add_option("map", *input, "map JSON file or - for stdin")->required();
    cmd->callback([&opts, input] {
        const SpectrumReport rep = spectrum(load_map(*input));
        if (opts.verbose) {
            std::cerr << "eigenvalues (by decreasing modulus):\n";
            for (Complex l : rep.eigenvalues)
                std::cerr << "  " << fmt_complex(l) << "  |l| = " << std::abs(l) << "\n";
            std::cerr << "spectral radius " << rep.spectral_radius << ", pf bound "
                      << rep.pf_bound << (rep.bound_satisfied ? " (satisfied)" : " (VIOLATED)")
                      << "\n";
        }
        emit(spectrum_to_json(rep), opts);
    });
}

void add_decompose(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("decompose", "spectral decompositions");
    auto biorth = std::make_shared<bool>(false);
    auto input = std::make_shared<std::string>();
    cmd->add_flag("--biorth", *biorth, "bi-orthonormal eigenbasis decomposition");
    cmd->add_option("map", *input, "map JSON file or - for stdin")->required();
    cmd->callback([cmd, &opts, biorth, input] {
        if (!*biorth) throw CLI::RequiredError(cmd->get_name() + " --biorth");
        const BiorthDecomp dec = biorthonormal_decomposition(load_map(*input));
        note(opts, "eigenvector condition number " + std::to_string(dec.condition_number));
        emit(biorth_to_json(dec), opts);
    });
}

void add_gen(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("gen", "generate the built-in map families");
    cmd->require_subcommand(1);

    auto n_werner = std::make_shared<int>();
    auto* werner = cmd->add_subcommand("werner", "twirl onto the Werner span on C^n (x) C^n");
    werner->add_option("n", *n_werner, "local dimension n")->required();
    werner->callback([&opts, n_werner] { emit(map_to_json(werner_map(*n_werner)), opts); });

    auto n_iso = std::make_shared<int>();
    auto* iso = cmd->add_subcommand("isotropic", "twirl onto the isotropic span");
    iso->add_option("n", *n_iso, "local dimension n")->required();
    iso->callback([&opts, n_iso] { emit(map_to_json(isotropic_map(*n_iso)), opts); });

    auto p_file = std::make_shared<std::string>();
    auto* pinch = cmd->add_subcommand("pinching", "pinching over orthogonal projectors");
    pinch->add_option("projectors", *p_file, "JSON array of projector matrices")->required();
    pinch->callback([&opts, p_file] {
        const Json j = load_json_file(*p_file);
        if (!j.is_array() || j.empty())
            throw SchemaError(*p_file, "expected a nonempty array of matrices");
        std::vector<Matrix> projectors;
        for (std::size_t i = 0; i < j.size(); ++i)
            projectors.push_back(matrix_from_json(j[i], *p_file + "/" + std::to_string(i)));
        emit(map_to_json(pinching(projectors)), opts);
    });

    auto d_ball = std::make_shared<int>();
    auto* ball = cmd->add_subcommand("ball", "purity-ball map on M_d");
    ball->add_option("d", *d_ball, "dimension d")->required();
    ball->callback([&opts, d_ball] {
        if (*d_ball == 2)
            note(opts, "d = 2: the ball is all of S and the map degenerates to the identity");
        emit(map_to_json(ball_map(*d_ball)), opts);
    });

    struct ExampleArgs {
        std::string alpha;
        std::string beta_file;
    };
    auto ex_args = std::make_shared<ExampleArgs>();
    auto* example = cmd->add_subcommand("example", "circulant example map from (alpha, beta)");
    example->add_option("--alpha", ex_args->alpha, "comma-separated weights a0,a1,...")
        ->required();
    example->add_option("--beta", ex_args->beta_file, "beta matrix JSON file")->required();
    example->callback([&opts, ex_args] {
        ExampleMapSpec spec;
        std::stringstream ss(ex_args->alpha);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                spec.alpha.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw SchemaError("--alpha", "expected comma-separated numbers");
            }
        }
        spec.d = static_cast<int>(spec.alpha.size());
        spec.beta = matrix_from_json(load_json_file(ex_args->beta_file), ex_args->beta_file);
        emit(map_to_json(example_map(spec)), opts);
    });
}

void add_member(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("member", "state-class membership tests");
    auto d_ball = std::make_shared<int>(0);
    auto proj_file = std::make_shared<std::string>();
    auto state_file = std::make_shared<std::string>();
    auto* ball_opt = cmd->add_option("--ball", *d_ball, "purity ball in dimension d");
    auto* proj_opt =
        cmd->add_option("--projection", *proj_file, "projection map JSON file");
    ball_opt->excludes(proj_opt);
    cmd->add_option("state", *state_file, "state JSON file or - for stdin")->required();
    cmd->callback([cmd, &opts, d_ball, proj_file, state_file, ball_opt, proj_opt] {
        const DensityMatrix rho = load_state(*state_file);
        if (ball_opt->count()) {
            const bool member = ball_membership(rho, *d_ball);
            note(opts, std::string("ball membership: ") + (member ? "yes" : "no"));
            emit(Json{{"kind", "ball"},
                      {"member", member},
                      {"purity", purity(rho)},
                      {"threshold", 1.0 / (*d_ball - 1)}},
                 opts);
        } else if (proj_opt->count()) {
            const LinearMap pi = load_map(*proj_file);
            const MembershipResult r = projection_membership(rho, pi);
            Json j{{"kind", "projection"}, {"member", r.member}};
            if (!r.member) {
                j["witness"] = matrix_to_json(*r.witness);
                j["value"] = r.value;
            }
            note(opts, std::string("projection membership: ") + (r.member ? "yes" : "no"));
            emit(j, opts);
        } else {
            throw CLI::RequiredError(cmd->get_name() + " --ball or --projection");
        }
    });
}

void add_witness(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("witness", "construct a non-membership witness");
    auto d_ball = std::make_shared<int>();
    auto samples = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto state_file = std::make_shared<std::string>();
    cmd->add_option("--ball", *d_ball, "purity ball in dimension d")->required();
    cmd->add_option("--samples", *samples, "ball states sampled for the soundness check");
    cmd->add_option("--seed", *seed, "sampling seed");
    cmd->add_option("state", *state_file, "state JSON file or - for stdin")->required();
    cmd->callback([&opts, d_ball, samples, seed, state_file] {
        const DensityMatrix rho = load_state(*state_file);
        const Witness w = ball_witness(rho, *d_ball, *samples, *seed);
        note(opts, "witness value " + std::to_string(w.value) + ", sampled min " +
                       std::to_string(w.sampled_min));
        emit(witness_to_json(w), opts);
    });
}

void add_demo(CLI::App& app, GlobalOpts& opts) {
    auto* cmd = app.add_subcommand("demo", "worked demonstrations");
    cmd->require_subcommand(1);
    auto* ex = cmd->add_subcommand(
        "example-map", "random circulant map: closed-form vs computed eigenvalues");
    auto d = std::make_shared<int>();
    auto seed = std::make_shared<std::uint64_t>(0);
    ex->add_option("--d", *d, "dimension")->required();
    ex->add_option("--seed", *seed, "seed for the random (alpha, beta) pair");
    ex->callback([&opts, d, seed] {
        const ExampleMapSpec spec = ExampleMapSpec::random(*d, *seed);
        const SpectrumReport rep = spectrum(example_map(spec));
        const auto pairs = match_multisets(predicted_eigenvalues(spec), rep.eigenvalues);
        Json jpairs = Json::array();
        for (const auto& p : pairs)
            jpairs.push_back(Json{{"predicted", complex_to_json(p.predicted)},
                                  {"computed", complex_to_json(p.computed)}});
        Json alpha = Json::array();
        for (double a : spec.alpha) alpha.push_back(a);
        if (opts.verbose) {
            std::cerr << "predicted (closed form)      computed (eigensolver)\n";
            for (const auto& p : pairs)
                std::cerr << "  " << fmt_complex(p.predicted) << "    " << fmt_complex(p.computed)
                          << "\n";
        }
        emit(Json{{"d", *d},
                  {"seed", *seed},
                  {"alpha", std::move(alpha)},
                  {"beta", matrix_to_json(spec.beta)},
                  {"pairs", std::move(jpairs)},
                  {"max_deviation", max_match_deviation(pairs)}},
             opts);
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for linear maps on M_d: representations, positivity, spectra, "
                 "state classes and witnesses"};
    app.require_subcommand(1);
    GlobalOpts opts;
    app.add_option("-o,--output", opts.output, "write JSON to a file instead of stdout");
    app.add_flag("--verbose", opts.verbose, "print a human-readable summary to stderr");

    add_convert(app, opts);
    add_check(app, opts);
    add_spectrum(app, opts);
    add_decompose(app, opts);
    add_gen(app, opts);
    add_member(app, opts);
    add_witness(app, opts);
    add_demo(app, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const SchemaError& e) {
        std::cout << Json{{"error", e.code()}, {"detail", e.what()}, {"path", e.path()}}.dump()
                  << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << Json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}

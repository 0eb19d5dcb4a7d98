#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cpig/bounds.hpp"
#include "cpig/divergence.hpp"
#include "cpig/error.hpp"
#include "cpig/estimation.hpp"
#include "cpig/io.hpp"
#include "cpig/measures.hpp"
#include "cpig/orders.hpp"
#include "cpig/validation.hpp"

namespace cpig::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string scalar_text(const Json& j) {
    if (j.is_number_float()) return format_number(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        if (flat) {
            out << prefix << "=";
            for (std::size_t i = 0; i < j.size(); ++i) out << (i ? "," : "") << scalar_text(j[i]);
            out << "\n";
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
        }
        return;
    }
    out << prefix << "=" << scalar_text(j) << "\n";
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << doc.dump(2) << "\n";
    } else {
        flatten(doc, "", out);
    }
}

Json measure_json(const MeasureResult& r) {
    Json j;
    j["value"] = r.value;
    j["abs_err"] = r.abs_err;
    j["method"] = std::string(to_string(r.method));
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

void merge(Json& into, const Json& from) {
    for (const auto& [k, v] : from.items()) into[k] = v;
}

std::uint64_t parse_seed_text(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 10);
    } catch (const std::exception&) {
        throw ParseError(0, "seed must be a nonnegative integer");
    }
    if (used != text.size() || text.find('-') != std::string::npos)
        throw ParseError(used, "seed must be a nonnegative integer");
    return v;
}

std::uint64_t resolve_seed(const CLI::Option* opt, const std::string& given) {
    if (opt->count() > 0) return parse_seed_text(given);
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') return parse_seed_text(env);
    return 1;
}

std::vector<Theta> parse_thetas(const std::string& text) {
    std::vector<Theta> out;
    for (double v : io::parse_number_list(text)) out.emplace_back(v);
    return out;
}

void require(const CLI::Option* opt, const std::string& why) {
    if (opt->count() == 0) throw ParseError(0, "missing " + opt->get_name() + " (" + why + ")");
}

void print_validation_table(const Json& doc, std::ostream& out) {
    out << "command=validate\n";
    out << "config.seed=" << doc["config"]["seed"].get<std::uint64_t>() << "\n";
    std::size_t width = 2;
    for (const auto& c : doc["claims"]) width = std::max(width, c["id"].get<std::string>().size());
    out << std::left << std::setw(14) << "status" << std::setw(static_cast<int>(width) + 2) << "id" << "detail\n";
    for (const auto& c : doc["claims"])
        out << std::setw(14) << c["status"].get<std::string>() << std::setw(static_cast<int>(width) + 2)
            << c["id"].get<std::string>() << c["detail"].get<std::string>() << "\n";
    out << "passed=" << (doc["passed"].get<bool>() ? "true" : "false") << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cumulative past information generating function toolkit", "cpig"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    // measure
    auto* measure = app.add_subcommand("measure", "Evaluate one measure of a distribution");
    std::string m_dist, m_dist2, m_name;
    double m_theta = 0, m_q = 0, m_alpha = 0, m_beta = 0, m_tol = kDefaultTol;
    int m_n = 0;
    bool m_force = false;
    measure->add_option("--dist", m_dist, "Distribution, e.g. uniform:0,1")->required();
    measure->add_option("--measure", m_name, "Measure name")
        ->required()
        ->check(CLI::IsMember({"cpig", "crig", "rcpig", "cigf", "gcpe", "gcre", "cpj", "crj", "gmd", "entropy", "fcpe",
                               "cpte"}));
    auto* m_theta_opt = measure->add_option("--theta", m_theta);
    auto* m_n_opt = measure->add_option("--n", m_n);
    auto* m_q_opt = measure->add_option("--q", m_q);
    auto* m_alpha_opt = measure->add_option("--alpha", m_alpha);
    auto* m_beta_opt = measure->add_option("--beta", m_beta);
    auto* m_dist2_opt = measure->add_option("--dist2", m_dist2);
    measure->add_option("--tol", m_tol, "Absolute quadrature tolerance");
    measure->add_flag("--force-quadrature", m_force, "Skip closed forms");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Empirical CPIG from a sample file");
    std::string e_input, e_moments;
    double e_theta = 0;
    estimate->add_option("--input", e_input, "Sample file")->required();
    estimate->add_option("--theta", e_theta)->required();
    auto* e_moments_opt = estimate->add_option("--moments", e_moments, "exp:LAMBDA,N or unif:N");

    // divergence
    auto* divergence = app.add_subcommand("divergence", "Divergences and Jensen gaps");
    std::string d_x, d_y, d_kind, d_weights = "0.5,0.5";
    double d_theta = 0, d_q = 0;
    divergence->add_option("--dist-x", d_x)->required();
    divergence->add_option("--dist-y", d_y)->required();
    auto* d_theta_opt = divergence->add_option("--theta", d_theta);
    auto* d_q_opt = divergence->add_option("--q", d_q, "Order for jfcpe and jcpte (defaults to --theta)");
    divergence->add_option("--kind", d_kind)
        ->required()
        ->check(CLI::IsMember({"d", "jcpig", "jfcpe", "jcpte", "decomposition"}));
    divergence->add_option("--weights", d_weights, "Mixture weights for x and y");

    // order
    auto* order = app.add_subcommand("order", "Stochastic order checks");
    std::string o_x, o_y, o_kind, o_thetas = "0.5,1,2,5";
    std::size_t o_grid = kDefaultOrderGrid;
    order->add_option("--dist-x", o_x)->required();
    order->add_option("--dist-y", o_y)->required();
    order->add_option("--kind", o_kind)->required()->check(CLI::IsMember({"disp", "st", "cpig"}));
    order->add_option("--thetas", o_thetas, "Comma list for the cpig order");
    order->add_option("--grid", o_grid, "Grid size for disp and st");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Lower bounds on CPIG");
    std::string b_dist;
    double b_theta = 0;
    bounds->add_option("--dist", b_dist)->required();
    bounds->add_option("--theta", b_theta)->required();

    // simulate clt
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
    simulate->require_subcommand(1);
    auto* clt = simulate->add_subcommand("clt", "Normal approximation of the standardized estimator");
    std::string c_dist, c_seed;
    std::size_t c_n = 0, c_reps = 0;
    double c_theta = 0;
    clt->add_option("--dist", c_dist, "exp:LAMBDA")->required();
    clt->add_option("--n", c_n)->required();
    clt->add_option("--reps", c_reps)->required();
    clt->add_option("--theta", c_theta)->required();
    auto* c_seed_opt = clt->add_option("--seed", c_seed);

    // validate
    auto* validate = app.add_subcommand("validate", "Run the identity and inequality battery");
    std::string v_seed;
    auto* v_seed_opt = validate->add_option("--seed", v_seed);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        Json doc;
        if (*measure) {
            doc["command"] = "measure";
            Json& cfg = doc["config"];
            cfg["dist"] = m_dist;
            cfg["measure"] = m_name;
            const DistributionSpec f = io::parse_dist_spec(m_dist);
            EvalOptions opts;
            opts.tol = m_tol;
            opts.force_quadrature = m_force;
            MeasureResult r;
            auto theta = [&] {
                require(m_theta_opt, m_name + " needs --theta");
                cfg["theta"] = m_theta;
                return Theta(m_theta);
            };
            auto order_n = [&] {
                require(m_n_opt, m_name + " needs --n");
                cfg["n"] = m_n;
                return m_n;
            };
            auto q = [&] {
                require(m_q_opt, m_name + " needs --q");
                cfg["q"] = m_q;
                return m_q;
            };
            if (m_name == "cpig") {
                r = cpig(f, theta(), opts);
            } else if (m_name == "crig") {
                r = crig(f, theta(), opts);
            } else if (m_name == "rcpig") {
                const Theta t = theta();
                require(m_dist2_opt, "rcpig needs --dist2");
                cfg["dist2"] = m_dist2;
                r = rcpig(f, io::parse_dist_spec(m_dist2), t, opts);
            } else if (m_name == "cigf") {
                require(m_alpha_opt, "cigf needs --alpha");
                require(m_beta_opt, "cigf needs --beta");
                cfg["alpha"] = m_alpha;
                cfg["beta"] = m_beta;
                r = cigf(f, m_alpha, m_beta, opts);
            } else if (m_name == "gcpe") {
                r = gcpe(f, order_n(), opts);
            } else if (m_name == "gcre") {
                r = gcre(f, order_n(), opts);
            } else if (m_name == "cpj") {
                r = cumulative_extropy(f, Side::Past, opts);
            } else if (m_name == "crj") {
                r = cumulative_extropy(f, Side::Residual, opts);
            } else if (m_name == "gmd") {
                r = gmd(f, opts);
            } else if (m_name == "entropy") {
                r = shannon_entropy(f, opts);
            } else if (m_name == "fcpe") {
                r = fcpe(f, q(), opts);
            } else {
                r = cpte(f, q(), opts);
            }
            cfg["tol"] = m_tol;
            cfg["force_quadrature"] = m_force;
            merge(doc, measure_json(r));
        } else if (*estimate) {
            doc["command"] = "estimate";
            doc["config"]["input"] = e_input;
            doc["config"]["theta"] = e_theta;
            const auto sample = io::read_sample_file(e_input);
            const Theta t(e_theta);
            doc["value"] = empirical_cpig(sample, t);
            doc["abs_err"] = 0.0;
            doc["method"] = "empirical";
            doc["sample_size"] = sample.size();
            if (e_moments_opt->count() > 0) {
                doc["config"]["moments"] = e_moments;
                const std::size_t colon = e_moments.find(':');
                if (colon == std::string::npos) throw ParseError(e_moments.size(), "expected exp:LAMBDA,N or unif:N");
                const std::string family = e_moments.substr(0, colon);
                const auto params = io::parse_number_list(std::string_view(e_moments).substr(colon + 1));
                auto as_count = [&](double v) {
                    if (!(v >= 1.0) || v != std::floor(v)) throw ParseError(colon + 1, "N must be a positive integer");
                    return static_cast<std::size_t>(v);
                };
                EstimatorMoments em;
                if (family == "exp" && params.size() == 2) {
                    em = estimator_moments_exponential(as_count(params[1]), params[0], t);
                } else if (family == "unif" && params.size() == 1) {
                    em = estimator_moments_uniform(as_count(params[0]), t);
                } else {
                    throw ParseError(0, "expected exp:LAMBDA,N or unif:N");
                }
                Json& mj = doc["moments"];
                mj["model"] = family;
                mj["n"] = em.n;
                mj["mean"] = em.mean;
                mj["variance_paper"] = em.variance_paper;
                mj["variance_corrected"] = em.variance_corrected;
                mj["caveat"] = em.caveat;
            }
        } else if (*divergence) {
            doc["command"] = "divergence";
            Json& cfg = doc["config"];
            cfg["dist_x"] = d_x;
            cfg["dist_y"] = d_y;
            cfg["kind"] = d_kind;
            const DistributionSpec x = io::parse_dist_spec(d_x);
            const DistributionSpec y = io::parse_dist_spec(d_y);
            const std::vector<DistributionSpec> comps{x, y};
            auto theta = [&] {
                require(d_theta_opt, d_kind + " needs --theta");
                cfg["theta"] = d_theta;
                return Theta(d_theta);
            };
            auto weights = [&] {
                const auto w = io::parse_number_list(d_weights);
                if (w.size() != 2) throw ParseError(0, "--weights takes two values");
                cfg["weights"] = w;
                return MixWeights(w);
            };
            auto q = [&] {
                if (d_q_opt->count() == 0) require(d_theta_opt, d_kind + " needs --q");
                const double v = d_q_opt->count() > 0 ? d_q : d_theta;
                cfg["q"] = v;
                return v;
            };
            if (d_kind == "d") {
                merge(doc, measure_json(cpig_divergence(x, y, theta())));
            } else if (d_kind == "jcpig") {
                const Theta t = theta();
                merge(doc, measure_json(jcpig(comps, weights(), t)));
            } else if (d_kind == "jfcpe") {
                const MixWeights w = weights();
                merge(doc, measure_json(jfcpe(comps, w, q())));
            } else if (d_kind == "jcpte") {
                const MixWeights w = weights();
                merge(doc, measure_json(jcpte(comps, w, q())));
            } else {
                const Theta t = theta();
                const auto rep = jcpig_mixture_decomposition(comps, weights(), t);
                doc["jcpig"] = rep.jcpig_value;
                doc["weighted_divergence_sum"] = rep.weighted_divergence_sum;
                doc["difference"] = rep.jcpig_value - rep.weighted_divergence_sum;
                doc["method"] = std::string(to_string(Method::Quadrature));
                doc["status"] = "reported-only";
            }
        } else if (*order) {
            doc["command"] = "order";
            Json& cfg = doc["config"];
            cfg["dist_x"] = o_x;
            cfg["dist_y"] = o_y;
            cfg["kind"] = o_kind;
            const DistributionSpec x = io::parse_dist_spec(o_x);
            const DistributionSpec y = io::parse_dist_spec(o_y);
            OrderReport rep;
            if (o_kind == "disp") {
                cfg["grid"] = o_grid;
                rep = dispersive_order_check(x, y, o_grid);
            } else if (o_kind == "st") {
                cfg["grid"] = o_grid;
                rep = stochastic_order_check(x, y, o_grid);
            } else {
                const auto ts = parse_thetas(o_thetas);
                cfg["thetas"] = io::parse_number_list(o_thetas);
                rep = cpig_order_check(x, y, ts);
            }
            doc["holds"] = rep.holds;
            doc["checked_points"] = rep.checked_points;
            if (rep.witness) {
                doc["witness"]["at"] = rep.witness->at;
                doc["witness"]["lhs"] = rep.witness->lhs;
                doc["witness"]["rhs"] = rep.witness->rhs;
            }
        } else if (*bounds) {
            doc["command"] = "bounds";
            doc["config"]["dist"] = b_dist;
            doc["config"]["theta"] = b_theta;
            const auto reports = bound_suite(io::parse_dist_spec(b_dist), Theta(b_theta));
            for (const auto& r : reports) {
                Json& bj = doc[r.name];
                bj["applicable"] = r.applicable;
                if (r.applicable) {
                    bj["lhs"] = r.lhs;
                    bj["rhs"] = r.rhs;
                    bj["relation"] = r.relation == Relation::GreaterEqual ? ">=" : "<=";
                    bj["holds"] = r.holds;
                    bj["slack"] = r.slack;
                }
                if (!r.note.empty()) bj["note"] = r.note;
            }
        } else if (*simulate) {
            doc["command"] = "simulate clt";
            const std::uint64_t seed = resolve_seed(c_seed_opt, c_seed);
            Json& cfg = doc["config"];
            cfg["dist"] = c_dist;
            cfg["n"] = c_n;
            cfg["reps"] = c_reps;
            cfg["theta"] = c_theta;
            cfg["seed"] = seed;
            const auto rep = clt_experiment(io::parse_dist_spec(c_dist), c_n, Theta(c_theta), c_reps, seed);
            doc["value"] = rep.ks_distance;
            // Two-sided 95% DKW half-width for the empirical CDF of the replicates.
            doc["abs_err"] = std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(rep.replicates)));
            doc["method"] = std::string(to_string(Method::MonteCarlo));
            doc["ks_distance"] = rep.ks_distance;
            doc["standardized_mean"] = rep.standardized_mean;
            doc["standardized_variance"] = rep.standardized_variance;
            doc["replicates"] = rep.replicates;
        } else if (*validate) {
            const std::uint64_t seed = resolve_seed(v_seed_opt, v_seed);
            doc["command"] = "validate";
            doc["config"]["seed"] = seed;
            const auto checks = run_validation(seed);
            for (const auto& c : checks) {
                Json cj;
                cj["id"] = c.id;
                cj["claim"] = c.claim;
                cj["status"] = std::string(to_string(c.status));
                cj["detail"] = c.detail;
                doc["claims"].push_back(cj);
            }
            const bool passed = all_passed(checks);
            doc["passed"] = passed;
            if (format == "json") {
                emit(doc, format, out);
            } else {
                print_validation_table(doc, out);
            }
            return passed ? kExitOk : kExitValidation;
        }
        emit(doc, format, out);
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Parse:
            case ErrorKind::InvalidKnots: return kExitParse;
            case ErrorKind::Divergent: return kExitDivergent;
            default: return kExitError;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace cpig::cli

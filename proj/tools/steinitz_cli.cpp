// Command-line front end: find, verify, density, ringcheck.
//
// Exit codes
//   0  success
//   1  usage or I/O error
//   2  malformed field spec, certificate or factor file
//   3  class group computation failed
//   4  no twisting ideal in the target class
//   5  gamma or the first auxiliary prime not found
//   6  seed vector or the second auxiliary prime not found
//   7  congruence assembly or conditions (1)-(6) failed
//   8  sieve exhausted the box (statistics on stderr)
//   9  verification failed (certificate flags or ring campaign)
//  10  internal error

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "steinitz/density.hpp"
#include "steinitz/error.hpp"
#include "steinitz/fuzz.hpp"
#include "steinitz/serialize.hpp"

#ifndef STEINITZ_DATA_DIR
#define STEINITZ_DATA_DIR "data"
#endif

using namespace steinitz;

namespace {

enum Exit {
    ok = 0,
    usage = 1,
    malformed = 2,
    class_group_failed = 3,
    target_ideal = 4,
    gamma_p1 = 5,
    seed_p2 = 6,
    assembly = 7,
    exhausted = 8,
    verify_failed = 9,
    internal = 10,
};

struct ExitError {
    int code;
    std::string message;
};

std::string resolve_field(const std::string& name)
{
    namespace fs = std::filesystem;
    if (fs::exists(name))
        return name;
    for (auto candidate : {fs::path(STEINITZ_DATA_DIR) / "fields" / name,
                           fs::path(STEINITZ_DATA_DIR) / "fields" / (name + ".json")})
        if (fs::exists(candidate))
            return candidate.string();
    throw ExitError{malformed, "no field spec named " + name};
}

FieldSpec load_spec(const std::string& name)
{
    try {
        return load_field_spec(resolve_field(name));
    } catch (const Error& e) {
        throw ExitError{malformed, e.what()};
    }
}

FieldPtr load_field(const FieldSpec& spec)
{
    try {
        return build_field(spec);
    } catch (const Error& e) {
        throw ExitError{malformed, std::string("field spec rejected: ") + e.what()};
    }
}

ClassGroupTable load_class_group(const NumberField& K)
{
    try {
        return class_group(K);
    } catch (const Error& e) {
        throw ExitError{class_group_failed, e.what()};
    }
}

void emit(const Json& j, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    try {
        write_json_file(out, j);
    } catch (const Error& e) {
        throw ExitError{usage, e.what()};
    }
}

Json stats_json(const SieveStats& s)
{
    return Json{{"candidates", s.candidates}, {"not_squarefree", s.not_squarefree}, {"unknown", s.unknown},
                {"degenerate", s.degenerate}, {"spot_checks", s.spot_checks},   {"last_t2", to_json(s.last_t2)}};
}

int stage_exit(Stage s)
{
    switch (s) {
    case Stage::target_ideal: return target_ideal;
    case Stage::gamma_p1: return gamma_p1;
    case Stage::seed_p2: return seed_p2;
    case Stage::assembly: return assembly;
    case Stage::sieve: return exhausted;
    case Stage::verify: return verify_failed;
    }
    return internal;
}

/* Defaults read from the JSON file named by STEINITZ_CONFIG, if set. */
Json default_config()
{
    const char* path = std::getenv("STEINITZ_CONFIG");
    if (!path || !*path)
        return Json::object();
    try {
        return read_json_file(path);
    } catch (const Error& e) {
        throw ExitError{usage, std::string("STEINITZ_CONFIG: ") + e.what()};
    }
}

struct FindArgs {
    std::string field;
    unsigned degree = 3;
    long cls = 0;
    std::string box = "1000000000";
    std::uint64_t factor_bound = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out;
    std::string scan_bound = "5000";
    double spot_check_rate = 0.05;
    std::uint64_t max_candidates = 2000000;
};

int run_find(const FindArgs& a)
{
    FieldSpec spec = load_spec(a.field);
    FieldPtr K = load_field(spec);
    ClassGroupTable G = load_class_group(*K);
    if (a.cls < 0 || a.cls >= G.order())
        throw ExitError{usage, "class index out of range; the class group has order " + std::to_string(G.order())};
    EndToEndOptions opts;
    opts.seed = a.seed;
    opts.scan_bound = Int(a.scan_bound);
    opts.sieve.box = Int(a.box);
    opts.sieve.factor.trial_bound = a.factor_bound;
    opts.sieve.workers = a.workers;
    opts.sieve.spot_check_rate = a.spot_check_rate;
    opts.sieve.max_candidates = a.max_candidates;
    SieveStats stats;
    try {
        SearchCertificate c = end_to_end(*K, G, a.cls, a.degree, opts, &stats);
        c.field_name = spec.name;
        emit(certificate_to_json(c), a.out);
        std::cerr << Json{{"status", "ok"}, {"statistics", stats_json(stats)}}.dump() << '\n';
        return ok;
    } catch (const StageError& e) {
        std::cerr << Json{{"status", "failed"},
                          {"stage", to_string(e.stage())},
                          {"error", to_string(e.kind())},
                          {"message", e.what()},
                          {"statistics", stats_json(e.stats)}}
                         .dump()
                  << '\n';
        return e.kind() == ErrorKind::internal && e.stage() != Stage::verify ? internal : stage_exit(e.stage());
    }
}

int run_verify(const std::string& path, const std::string& out)
{
    SearchCertificate c;
    FieldPtr K;
    try {
        c = certificate_from_json(read_json_file(path));
        K = certificate_field(c);
    } catch (const Error& e) {
        throw ExitError{malformed, e.what()};
    }
    ClassGroupTable G = load_class_group(*K);
    auto flags = compute_flags(*K, G, c);
    Json table = Json::object();
    Json diff = Json::array();
    bool all = true;
    for (auto& name : certificate_flag_names()) {
        auto it = c.flags.find(name);
        bool stored = it != c.flags.end() && it->second;
        bool fresh = flags[name];
        table[name] = Json{{"stored", stored}, {"recomputed", fresh}};
        if (stored != fresh || !fresh) {
            diff.push_back(name);
            all = false;
        }
    }
    for (auto& [name, v] : c.flags)
        if (!flags.count(name)) {
            diff.push_back(name);
            all = false;
        }
    emit(Json{{"certificate", path}, {"ok", all}, {"failed", diff}, {"flags", table}}, out);
    if (!all)
        std::cerr << "verification failed: " << diff.dump() << '\n';
    return all ? ok : verify_failed;
}

DensitySystem load_factor_file(const std::string& path)
{
    try {
        Json j = read_json_file(path);
        DensitySystem sys;
        for (auto& f : j.at("factors"))
            sys.factors.push_back({element_from_json(f.at("c")), element_from_json(f.at("d"))});
        if (j.contains("exclude"))
            for (auto& p : j.at("exclude"))
                sys.exclude.push_back(prime_from_json(p));
        if (j.contains("t"))
            sys.t = TSet{element_from_json(j.at("t").at("base")), ideal_from_json(j.at("t").at("modulus"))};
        return sys;
    } catch (const Error& e) {
        throw ExitError{malformed, e.what()};
    } catch (const std::exception& e) {
        throw ExitError{malformed, path + ": " + e.what()};
    }
}

struct DensityArgs {
    std::string field;
    std::string factors;
    std::string from_cert;
    std::string box = "100000";
    std::string prime_bound = "100";
    unsigned workers = 1;
    std::uint64_t factor_bound = 1000000;
    std::string out;
};

int run_density(const DensityArgs& a)
{
    FieldPtr K;
    DensitySystem sys;
    std::string field_name;
    if (!a.from_cert.empty()) {
        try {
            SearchCertificate c = certificate_from_json(read_json_file(a.from_cert));
            K = certificate_field(c);
            field_name = c.field_name;
            for (auto* P : {&c.a, &c.p1})
                for (auto& Q : factor_rational_prime(*K, P->p))
                    if (Q.ideal == P->ideal)
                        *P = Q;
            sys = density_system_from_certificate(*K, c);
        } catch (const Error& e) {
            throw ExitError{malformed, e.what()};
        }
    } else {
        if (a.field.empty())
            throw ExitError{usage, "--field is required with --factors"};
        FieldSpec spec = load_spec(a.field);
        K = load_field(spec);
        field_name = spec.name;
        sys = load_factor_file(a.factors);
        for (auto& P : sys.exclude)
            for (auto& Q : factor_rational_prime(*K, P.p))
                if (Q.ideal == P.ideal)
                    P = Q;
    }
    DensityOptions opts;
    opts.box = Int(a.box);
    opts.prime_bound = Int(a.prime_bound);
    opts.workers = a.workers;
    opts.factor.trial_bound = a.factor_bound;
    DensityReport r = density_report(*K, sys, opts);
    Json table = Json::array();
    for (auto& row : r.table)
        table.push_back(Json{{"prime", to_json(row.prime)}, {"density", to_json(row.density)}});
    emit(Json{{"field", field_name},
              {"box", a.box},
              {"prime_bound", a.prime_bound},
              {"sample", r.sample},
              {"squarefree", r.squarefree},
              {"unknown", r.unknown},
              {"empirical_fraction", r.empirical},
              {"truncated_product", r.truncated_product.get_d()},
              {"truncated_product_exact", to_json(r.truncated_product)},
              {"gap", r.gap},
              {"integer_sieve", r.integer_path},
              {"local_densities", table}},
         a.out);
    return ok;
}

struct RingArgs {
    std::string field;
    std::size_t min_degree = 2;
    std::size_t max_degree = 6;
    std::uint64_t campaign = 200;
    std::uint64_t seed = 1;
    long height = 50;
    std::string out;
};

int run_ringcheck(const RingArgs& a)
{
    FieldSpec spec = load_spec(a.field);
    FieldPtr K = load_field(spec);
    ClassGroupTable G = load_class_group(*K);
    RingCampaignOptions opts;
    opts.min_degree = a.min_degree;
    opts.max_degree = a.max_degree;
    opts.forms = a.campaign;
    opts.seed = a.seed;
    opts.height = a.height;
    RingCampaignReport r = ring_campaign(*K, G, opts);
    Json failures = Json::array();
    for (auto& f : r.failures) {
        Json form = Json::array();
        for (auto& c : f.form.coeffs)
            form.push_back(to_json(c));
        Json entry{{"check", f.check}, {"form", form}, {"detail", f.detail}};
        if (f.twist)
            entry["twist"] = to_json(*f.twist);
        failures.push_back(entry);
    }
    emit(Json{{"field", spec.name},
              {"seed", std::to_string(a.seed)},
              {"forms", r.forms},
              {"monic", r.monic},
              {"oracle_checks", r.oracle_checks},
              {"axiom_checks", r.axiom_checks},
              {"twist_checks", r.twist_checks},
              {"twist_successes", r.twist_successes},
              {"discriminant_checks", r.disc_checks},
              {"failures", failures}},
         a.out);
    return r.failures.empty() ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steinitz realization: Wood rings and squarefree discriminant search"};
    app.require_subcommand(1);

    Json cfg;
    try {
        cfg = default_config();
    } catch (const ExitError& e) {
        std::cerr << e.message << '\n';
        return e.code;
    }
    auto def = [&](const char* key, auto& target) {
        using T = std::decay_t<decltype(target)>;
        if (cfg.contains(key)) {
            if constexpr (std::is_same_v<T, std::string>)
                target = cfg[key].is_string() ? cfg[key].get<std::string>() : cfg[key].dump();
            else
                target = cfg[key].get<T>();
        }
    };

    FindArgs fa;
    def("field", fa.field);
    def("box", fa.box);
    def("factor_bound", fa.factor_bound);
    def("seed", fa.seed);
    def("workers", fa.workers);
    def("scan_bound", fa.scan_bound);
    def("spot_check_rate", fa.spot_check_rate);
    auto* find = app.add_subcommand("find", "search for a squarefree-discriminant extension with a given Steinitz class");
    find->add_option("--field", fa.field, "field spec (path or name under data/fields)")->required(fa.field.empty());
    find->add_option("--degree", fa.degree, "extension degree n")->check(CLI::Range(2u, 12u));
    find->add_option("--class", fa.cls, "target class index (mixed radix over the cyclic factors)");
    find->add_option("--box", fa.box, "bound N on |b|");
    find->add_option("--factor-bound", fa.factor_bound, "trial division bound for norm factorization");
    find->add_option("--seed", fa.seed, "random seed");
    find->add_option("--workers", fa.workers, "sieve worker threads")->check(CLI::Range(1u, 256u));
    find->add_option("--out", fa.out, "certificate output path (stdout when omitted)");
    find->add_option("--scan-bound", fa.scan_bound, "largest rational prime scanned for auxiliary primes");
    find->add_option("--spot-check-rate", fa.spot_check_rate, "fraction of candidates checked against the resultant")
        ->check(CLI::Range(0.0, 1.0));
    find->add_option("--max-candidates", fa.max_candidates, "sieve candidate budget");

    std::string verify_path, verify_out;
    auto* verify = app.add_subcommand("verify", "recompute every certificate flag");
    verify->add_option("path", verify_path, "certificate")->required();
    verify->add_option("--out", verify_out, "report path (stdout when omitted)");

    DensityArgs da;
    def("field", da.field);
    def("prime_bound", da.prime_bound);
    def("workers", da.workers);
    def("factor_bound", da.factor_bound);
    auto* density = app.add_subcommand("density", "empirical squarefree density against the local-density product");
    density->add_option("--field", da.field, "field spec (with --factors)");
    auto* fopt = density->add_option("--factors", da.factors, "linear factor file");
    auto* copt = density->add_option("--from-cert", da.from_cert, "take the factor system from a certificate");
    fopt->excludes(copt);
    density->add_option("--box", da.box, "bound N on |b|");
    density->add_option("--prime-bound", da.prime_bound, "norm bound B for the truncated product");
    density->add_option("--workers", da.workers, "worker threads")->check(CLI::Range(1u, 256u));
    density->add_option("--factor-bound", da.factor_bound, "trial division bound");
    density->add_option("--out", da.out, "report path (stdout when omitted)");

    RingArgs ra;
    def("field", ra.field);
    def("seed", ra.seed);
    auto* ring = app.add_subcommand("ringcheck", "fuzz the ring construction");
    ring->add_option("--field", ra.field, "field spec")->required(ra.field.empty());
    ring->add_option("--min-degree", ra.min_degree, "smallest form degree")->check(CLI::Range(2, 12));
    ring->add_option("--max-degree", ra.max_degree, "largest form degree")->check(CLI::Range(2, 12));
    ring->add_option("--campaign", ra.campaign, "number of random forms");
    ring->add_option("--seed", ra.seed, "random seed");
    ring->add_option("--height", ra.height, "coefficient height")->check(CLI::Range(1L, 1000000L));
    ring->add_option("--out", ra.out, "report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (*find)
            return run_find(fa);
        if (*verify)
            return run_verify(verify_path, verify_out);
        if (*density) {
            if (da.factors.empty() && da.from_cert.empty()) {
                std::cerr << "density needs --factors or --from-cert\n";
                return usage;
            }
            return run_density(da);
        }
        if (*ring)
            return run_ringcheck(ra);
    } catch (const ExitError& e) {
        std::cerr << e.message << '\n';
        return e.code;
    } catch (const Error& e) {
        std::cerr << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::parse_error ? malformed : internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
    return usage;
}

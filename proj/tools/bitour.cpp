// Command-line front end: gen, solve, verify, oracle, enumerate, fcheck.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "bitour/certificate.hpp"
#include "bitour/engine.hpp"
#include "bitour/oracle.hpp"

namespace {

using namespace bitour;

enum Exit { kOk = 0, kViolation = 1, kExcluded = 2, kInvalid = 3, kFalsified = 4 };

std::string read_source(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_target(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

Tournament load_instance(const std::string& path) {
    Tournament t = parse_instance(read_source(path));
    if (auto v = validate(t)) throw InvalidInput("not a regular bipartite tournament: " + v->invariant);
    return t;
}

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int p = std::stoi(s);
            return {p, p};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InvalidInput("bad p range '" + s + "' (expected P or LO..HI)");
    }
}

struct Options {
    // gen
    int k = 0, f4k = 0;
    std::uint64_t seed = 0;
    std::string out;
    // shared
    std::string instance, certificate;
    int p = 0;
    bool trace = false;
    // enumerate
    std::string range = "2..2", cursor;
    int workers = 1;
    std::uint64_t chunk = 2000, limit = 0;
    bool quiet = false;
};

int run_gen(const Options& o) {
    if ((o.k > 0) == (o.f4k > 0)) throw InvalidInput("gen needs exactly one of --k or --f4k");
    Tournament t = o.f4k > 0 ? make_f4k(o.f4k) : random_regular(o.k, o.seed);
    write_target(o.out, format_instance(t));
    return kOk;
}

int run_solve(const Options& o) {
    Tournament t = load_instance(o.instance);
    try {
        SolveResult r = solve(t, o.p, SolveOptions{o.trace});
        if (std::holds_alternative<Excluded>(r)) {
            std::cerr << "excluded: the instance is F_" << t.n() << "\n";
            return kExcluded;
        }
        const auto& cert = std::get<TwoFactorCertificate>(r);
        if (o.trace)
            for (const auto& line : cert.provenance) std::cerr << "trace: " << line << "\n";
        auto doc = nlohmann::json::parse(certificate_to_json(cert));
        doc["instance"] = format_instance(t);
        write_target(o.out, doc.dump() + "\n");
        return kOk;
    } catch (const Falsification& e) {
        std::cerr << "falsification: " << e.what() << "\n";
        for (const auto& line : e.provenance()) std::cerr << "  " << line << "\n";
        return kFalsified;
    }
}

int run_verify(const Options& o) {
    const std::string text = read_source(o.certificate);
    TwoFactorCertificate cert = certificate_from_json(text);
    Tournament t;
    if (!o.instance.empty()) {
        t = load_instance(o.instance);
    } else {
        auto doc = nlohmann::json::parse(text);
        if (!doc.contains("instance")) throw InvalidInput("certificate carries no instance; pass --instance");
        t = parse_instance(doc["instance"].get<std::string>());
        if (auto v = validate(t)) throw InvalidInput("embedded instance invalid: " + v->invariant);
    }
    if (auto v = verify_two_factor(t, cert)) {
        std::cout << "violation: " << v->invariant;
        if (!v->witnesses.empty()) std::cout << " [" << join_ids(v->witnesses) << "]";
        std::cout << "\n";
        return kViolation;
    }
    std::cout << "ok\n";
    return kOk;
}

int run_oracle(const Options& o) {
    Tournament t = load_instance(o.instance);
    auto found = brute_force_two_factor(t, o.p);
    if (!found) {
        std::cout << "none\n";
        return kExcluded;
    }
    std::cout << "exists " << join_ids(found->first.vertices) << " | " << join_ids(found->second.vertices) << "\n";
    return kOk;
}

int run_enumerate(const Options& o) {
    auto [lo, hi] = parse_range(o.range);
    ExhaustiveOptions ex;
    ex.workers = o.workers;
    ex.chunk = o.chunk;
    ex.cursor_path = o.cursor;
    if (o.limit) ex.limit = o.limit;
    if (!o.quiet) ex.on_outcome = [](const InstanceOutcome& r) { std::cout << format_outcome(r) << "\n"; };
    EnumerationReport report = run_exhaustive(o.k, lo, hi, ex);
    for (const auto& f : report.failures)
        std::cerr << "falsified idx=" << f.index << " p=" << f.p << ": " << f.detail << "\n";
    std::cout << report.summary() << "\n";
    return report.falsified ? kFalsified : kOk;
}

int run_fcheck(const Options& o) {
    Tournament t = load_instance(o.instance);
    std::cout << (is_f_isomorphic(t.digraph(), t.digraph().all()) ? "F" : "not-F") << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-cycle-factors of regular bipartite tournaments"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "write a random instance or F_4k");
    gen->add_option("--k", o.k, "random k-regular instance");
    gen->add_option("--seed", o.seed, "generator seed");
    gen->add_option("--f4k", o.f4k, "emit F_4k for this k");
    gen->add_option("-o,--out", o.out, "output file (default stdout)");

    auto* sol = app.add_subcommand("solve", "certificate JSON for a (2p, 4k-2p)-cycle-factor");
    sol->add_option("instance", o.instance, "instance file (default stdin)");
    sol->add_option("--p", o.p, "cycle half-length")->required();
    sol->add_option("-o,--out", o.out, "output file (default stdout)");
    sol->add_flag("--trace", o.trace, "print every construction step on stderr");

    auto* ver = app.add_subcommand("verify", "check a certificate");
    ver->add_option("certificate", o.certificate, "certificate file (default stdin)");
    ver->add_option("--instance", o.instance, "instance file (default: the one embedded by solve)");

    auto* ora = app.add_subcommand("oracle", "exhaustive existence check (4k <= 24)");
    ora->add_option("instance", o.instance, "instance file (default stdin)");
    ora->add_option("--p", o.p, "cycle half-length")->required();

    auto* en = app.add_subcommand("enumerate", "solve and verify every labeled instance");
    en->add_option("--k", o.k, "k in 1..3")->required();
    en->add_option("--p", o.range, "P or LO..HI");
    en->add_option("--workers", o.workers, "worker threads");
    en->add_option("--chunk", o.chunk, "instances per resumable chunk");
    en->add_option("--cursor", o.cursor, "cursor file for resuming");
    en->add_option("--limit", o.limit, "stop after this many instances");
    en->add_flag("--quiet", o.quiet, "print only the summary");

    auto* fc = app.add_subcommand("fcheck", "is the instance F_4k?");
    fc->add_option("instance", o.instance, "instance file (default stdin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*gen) return run_gen(o);
        if (*sol) return run_solve(o);
        if (*ver) return run_verify(o);
        if (*ora) return run_oracle(o);
        if (*en) return run_enumerate(o);
        if (*fc) return run_fcheck(o);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const Falsification& e) {
        std::cerr << "falsification: " << e.what() << "\n";
        return kFalsified;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}

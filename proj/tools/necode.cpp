// necode: command-line front end for the nec library.

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nec/decoder.hpp"
#include "nec/errors.hpp"
#include "nec/io.hpp"
#include "nec/metrics.hpp"
#include "nec/randomized.hpp"
#include "nec/topology.hpp"
#include "nec/variable_rate.hpp"

namespace fs = std::filesystem;
using nec::io::json;

namespace {

enum ExitCode { ok = 0, usage = 2, invalid_network = 3, verification_failed = 4, construction_failed = 5 };

struct Exit {
    int code;
    std::string message;
};

struct Common {
    std::uint64_t field = 2;
    std::size_t rate = 1;
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::string format = "text";
    std::string out;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

nec::Row parse_values(const std::string& text, const std::string& flag) {
    nec::Row out;
    for (const auto& item : split_list(text)) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size() || v >= (1ull << 31)) throw std::invalid_argument(item);
            out.push_back(static_cast<nec::Value>(v));
        } catch (const std::exception&) {
            throw Exit{usage, flag + ": '" + item + "' is not a field element"};
        }
    }
    return out;
}

nec::PrimeField make_field(std::uint64_t p) {
    if (p >= (1ull << 31) || !nec::is_prime(p)) throw Exit{usage, "--field " + std::to_string(p) + " is not a prime below 2^31"};
    return nec::PrimeField(p);
}

void check_network(const nec::Network& n) {
    const auto violations = nec::validate(n);
    if (violations.empty()) return;
    std::string msg;
    for (const auto& v : violations) msg += (msg.empty() ? "" : "\n") + v.rule + " violated: " + v.detail;
    throw Exit{invalid_network, msg};
}

std::shared_ptr<const nec::Network> load_network(const std::string& path) {
    auto n = std::make_shared<const nec::Network>(nec::io::load_network(path));
    check_network(*n);
    return n;
}

nec::NecCode load_code(const std::string& path) {
    const auto doc = nec::io::read_json(path);
    if (doc.is_object() && doc.contains("network")) check_network(nec::io::network_from_json(doc["network"], path + "/network"));
    return nec::io::code_from_json(doc, path);
}

/// Text goes to stdout; with --format json the machine report goes to --out (or stdout).
void emit(const Common& c, const std::string& text, const json& report) {
    if (c.format == "json") {
        if (c.out.empty()) {
            std::cout << nec::io::dump(report);
        } else {
            std::cout << text;
            nec::io::write_json(c.out, report);
        }
    } else {
        std::cout << text;
    }
}

void write_code(const std::string& out, const nec::NecCode& code) {
    if (out.empty()) {
        std::cout << nec::io::dump(nec::io::code_to_json(code));
    } else {
        nec::io::write_json(out, nec::io::code_to_json(code));
    }
}

std::string distance_text(const nec::NecCode& code, const nec::DistanceReport& report) {
    const auto& n = code.network();
    std::ostringstream os;
    os << "GF(" << code.field().modulus() << "), rate " << report.rate << "\n";
    os << std::left << std::setw(10) << "sink" << std::setw(6) << "C_t" << std::setw(8) << "delta" << std::setw(8)
       << "d_min" << std::setw(6) << "gap" << std::setw(7) << "MDS" << "witness\n";
    for (const auto& s : report.sinks) {
        os << std::setw(10) << n.node_name(s.sink) << std::setw(6) << s.min_cut << std::setw(8) << s.redundancy;
        if (s.distance) {
            os << std::setw(8) << *s.distance << std::setw(6) << *s.singleton_gap() << std::setw(7)
               << (s.mds ? "yes" : "no") << s.witness->describe(n) << "\n";
        } else {
            os << std::setw(8) << "-" << std::setw(6) << "-" << std::setw(7) << "no" << "not regular\n";
        }
    }
    os << "regular=" << (report.regular ? "true" : "false") << " MDS=" << (report.is_mds ? "true" : "false") << "\n";
    return os.str();
}

std::string row_text(std::span<const nec::Value> row) {
    std::string s = "[";
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + std::to_string(row[i]);
    return s + "]";
}

// ---------------------------------------------------------------------------

int cmd_net_info(const Common& c, const std::string& path) {
    const auto n = nec::io::load_network(path);
    const auto violations = nec::validate(n);
    json report = {{"kind", "network"}, {"nodes", n.node_count()}, {"channels", n.channel_count()}};
    std::ostringstream os;
    os << "nodes=" << n.node_count() << " |E|=" << n.channel_count() << " sinks=" << n.sinks().size() << "\n";
    if (!violations.empty()) {
        json v = json::array();
        for (const auto& x : violations) {
            os << x.rule << " violated: " << x.detail << "\n";
            v.push_back({{"rule", x.rule}, {"detail", x.detail}});
        }
        report["valid"] = false;
        report["violations"] = v;
        emit(c, os.str(), report);
        return invalid_network;
    }
    std::vector<std::size_t> cuts;
    json per_sink = json::object();
    std::string listing;
    for (nec::NodeId t : n.sinks()) {
        cuts.push_back(nec::min_cut(n, t));
        per_sink[n.node_name(t)] = cuts.back();
        listing += (listing.empty() ? "" : ", ") + ("C_" + n.node_name(t) + "=" + std::to_string(cuts.back()));
    }
    if (std::all_of(cuts.begin(), cuts.end(), [&](std::size_t x) { return x == cuts.front(); })) {
        os << "|E|=" << n.channel_count() << ", C_t=" << cuts.front() << " for " << cuts.size() << " sinks\n";
    }
    os << listing << "\n";
    os << "max rate=" << *std::min_element(cuts.begin(), cuts.end()) << "\nvalid\n";
    report["valid"] = true;
    report["min_cut"] = per_sink;
    emit(c, os.str(), report);
    return ok;
}

int cmd_gen_combination(const Common& c, std::size_t relays, std::size_t k) {
    if (relays == 0 || k == 0 || k > relays) throw Exit{usage, "gen combination needs 1 <= k <= n"};
    const auto doc = nec::io::network_to_json(nec::combination_network(relays, k));
    if (c.out.empty()) {
        std::cout << nec::io::dump(doc);
    } else {
        nec::io::write_json(c.out, doc);
    }
    return ok;
}

int cmd_construct(const Common& c, const std::string& path, std::size_t attempts) {
    const auto n = load_network(path);
    const auto field = make_field(c.field);
    const auto code = nec::construct_mds(n, c.rate, field, c.seed, attempts);
    write_code(c.out, code);
    if (!c.out.empty()) std::cout << distance_text(code, nec::verify_mds(code));
    return ok;
}

int cmd_verify(const Common& c, const std::string& path) {
    const auto code = load_code(path);
    const auto report = nec::verify_mds(code);
    emit(c, distance_text(code, report), nec::io::distance_report_to_json(code, report));
    return report.is_mds ? ok : verification_failed;
}

int cmd_reduce(const Common& c, const std::string& path, const std::string& k_text, const std::string& strategy) {
    const auto code = load_code(path);
    if (code.rate() < 2) throw Exit{usage, "rate 1 code cannot be reduced further"};
    nec::ReductionVector k;
    if (k_text == "auto") {
        const auto s = strategy == "random" ? nec::KStrategy::random : nec::KStrategy::deterministic;
        k = nec::choose_k(code, s, c.seed);
    } else {
        k.values = parse_values(k_text, "--k");
        if (k.size() != code.rate() - 1) {
            throw Exit{usage, "--k needs " + std::to_string(code.rate() - 1) + " value(s)"};
        }
        for (auto& v : k.values) v %= static_cast<nec::Value>(code.field().modulus());
    }
    const auto reduced = nec::reduce_rate(code, k);
    const auto report = nec::verify_mds(reduced);
    write_code(c.out, reduced);
    if (!c.out.empty()) std::cout << "k=" << row_text(k.values) << "\n" << distance_text(reduced, report);
    return report.is_mds ? ok : verification_failed;
}

int cmd_family(const Common& c, const std::string& path, const std::string& strategy, bool rate_given,
               std::size_t attempts) {
    if (c.out.empty()) throw Exit{usage, "family needs --out <directory>"};
    nec::FamilyOptions opts;
    opts.strategy = strategy == "random" ? nec::KStrategy::random : nec::KStrategy::deterministic;
    opts.seed = c.seed;
    const auto doc = nec::io::read_json(path);
    nec::CodeFamily family;
    if (doc.is_object() && doc.contains("kernels")) {
        const auto code = load_code(path);
        if (rate_given && c.rate != code.rate()) throw Exit{usage, "--rate disagrees with the code file"};
        family = nec::build_family(code, opts);
    } else {
        const auto n = load_network(path);
        const auto field = make_field(c.field);
        family = nec::build_family(n, c.rate, field, c.seed, opts, attempts);
    }
    nec::io::save_family(c.out, family);
    std::ostringstream os;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const auto& m = family.members[i];
        os << "rate " << m.rate() << ": MDS=" << (family.reports[i].is_mds ? "true" : "false");
        if (i < family.steps.size()) os << ", k=" << row_text(family.steps[i].values);
        os << "\n";
    }
    std::cout << os.str();
    return ok;
}

int cmd_prob(const Common& c, const std::string& path, const std::string& target_text) {
    nec::TrialConfig cfg;
    cfg.network = load_network(path);
    cfg.field = make_field(c.field);
    cfg.rate = c.rate;
    cfg.trials = c.trials;
    cfg.master_seed = c.seed;
    nec::Target target = nec::Target::mds;
    if (target_text == "joint") target = nec::Target::joint_family;
    if (target_text == "joint-exists-k") target = nec::Target::joint_exists_k;
    const auto report = nec::estimate_success(cfg, target);

    std::ostringstream os;
    os << std::setprecision(6);
    os << "target=" << nec::to_string(target) << " GF(" << c.field << ") rate=" << c.rate << " trials=" << report.trials
       << "\n";
    os << "estimate=" << report.estimate << " (" << report.successes << "/" << report.trials << "), wilson95=["
       << report.wilson_low << ", " << report.wilson_high << "]\n";
    if (report.mds_bound) os << "mds lower bound=" << *report.mds_bound << "\n";
    if (report.joint_bounds) {
        const auto& j = *report.joint_bounds;
        if (j.exact) os << "joint lower bound=" << *j.exact << "\n";
        os << "joint binomial bound=" << j.binomial << "\n";
    }
    if (report.family_heuristic) os << "family heuristic (not a theorem)=" << *report.family_heuristic << "\n";
    emit(c, os.str(), nec::io::probability_report_to_json(cfg, report));
    return ok;
}

int cmd_simulate(const Common& c, const std::string& path, const std::string& message_text,
                 const std::string& pattern_text, const std::string& values_text, const std::string& scenario) {
    const auto code = load_code(path);
    const auto& n = code.network();
    nec::Row message;
    nec::ErrorPattern rho;
    nec::Row values;
    if (!scenario.empty()) {
        const auto doc = nec::io::read_json(scenario);
        if (!doc.is_object() || !doc.contains("message")) throw nec::ParseError(scenario, "missing field 'message'");
        try {
            message = doc["message"].get<nec::Row>();
            values = doc.value("values", nec::Row{});
        } catch (const json::exception& e) {
            throw nec::ParseError(scenario, e.what());
        }
        rho = nec::io::pattern_from_json(n, doc.value("pattern", json::array()), scenario + "/pattern");
    } else {
        message = parse_values(message_text, "--message");
        std::vector<nec::ChannelId> chans;
        for (const auto& id : split_list(pattern_text)) chans.push_back(n.channel_index(id));
        rho = nec::ErrorPattern(std::move(chans));
        values = parse_values(values_text, "--values");
    }
    const auto outcomes = nec::simulate(code, message, rho, values);

    std::ostringstream os;
    os << "message=" << row_text(message) << " pattern=" << rho.describe(n) << " values=" << row_text(values) << "\n";
    bool all_correct = true;
    for (const auto& o : outcomes) {
        const bool correct = o.result.message && *o.result.message == message;
        all_correct = all_correct && correct;
        os << n.node_name(o.sink) << ": received=" << row_text(o.received) << " ";
        if (o.result.message) {
            os << "decoded=" << row_text(*o.result.message);
        } else {
            os << "ambiguous (" << o.result.candidates.size() << " candidates)";
        }
        os << " weight=" << o.result.weight << (correct ? " ok" : " FAIL") << "\n";
    }
    emit(c, os.str(), nec::io::simulation_to_json(code, message, rho, values, outcomes));
    return all_correct ? ok : verification_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear network error-correction MDS codes and variable-rate families"};
    app.require_subcommand(1);
    Common c;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", c.out, "Output path");
    };

    std::string input;
    auto* net_info = app.add_subcommand("net-info", "Summarise and validate a network file");
    net_info->add_option("network", input, "Network file")->required();
    add_format(net_info);

    auto* gen = app.add_subcommand("gen", "Generate network files");
    gen->require_subcommand(1);
    auto* gen_comb = gen->add_subcommand("combination", "N-choose-k combination network");
    std::size_t comb_n = 0;
    std::size_t comb_k = 0;
    gen_comb->add_option("--n", comb_n, "Relay count")->required();
    gen_comb->add_option("--k", comb_k, "Relays per sink")->required();
    gen_comb->add_option("--out", c.out, "Output path");

    std::size_t attempts = 64;
    auto* construct = app.add_subcommand("construct", "Random construction of an MDS code");
    construct->add_option("network", input, "Network file")->required();
    construct->add_option("--field", c.field, "Prime modulus")->required();
    construct->add_option("--rate", c.rate, "Rate")->required();
    construct->add_option("--seed", c.seed, "Seed");
    construct->add_option("--attempts", attempts, "Maximum random draws");
    construct->add_option("--out", c.out, "Code file to write");

    auto* verify = app.add_subcommand("verify", "Minimum distances and MDS check");
    verify->add_option("code", input, "Code file")->required();
    add_format(verify);

    std::string k_text = "auto";
    std::string strategy = "deterministic";
    auto* reduce = app.add_subcommand("reduce", "Reduce the rate by one");
    reduce->add_option("code", input, "Code file")->required();
    reduce->add_option("--k", k_text, "Reduction vector (comma separated) or 'auto'");
    reduce->add_option("--strategy", strategy, "Automatic choice")->check(CLI::IsMember({"deterministic", "random"}));
    reduce->add_option("--seed", c.seed, "Seed for the random strategy");
    reduce->add_option("--out", c.out, "Code file to write");

    auto* family = app.add_subcommand("family", "Build rates w, w-1, ..., 1");
    family->add_option("input", input, "Code file, or network file with --field/--rate")->required();
    auto* family_rate = family->add_option("--rate", c.rate, "Top rate (network input)");
    family->add_option("--field", c.field, "Prime modulus (network input)");
    family->add_option("--seed", c.seed, "Seed");
    family->add_option("--attempts", attempts, "Maximum random draws for the top code");
    family->add_option("--strategy", strategy, "Reduction vector choice")->check(CLI::IsMember({"deterministic", "random"}));
    family->add_option("--out", c.out, "Archive directory");

    std::string target = "mds";
    auto* prob = app.add_subcommand("prob", "Monte-Carlo success probability against the lower bounds");
    prob->add_option("network", input, "Network file")->required();
    prob->add_option("--field", c.field, "Prime modulus")->required();
    prob->add_option("--rate", c.rate, "Rate")->required();
    prob->add_option("--trials", c.trials, "Trial count")->check(CLI::PositiveNumber);
    prob->add_option("--seed", c.seed, "Master seed");
    prob->add_option("--target", target, "Event to estimate")->check(CLI::IsMember({"mds", "joint", "joint-exists-k"}));
    add_format(prob);

    std::string message_text;
    std::string pattern_text;
    std::string values_text;
    std::string scenario;
    auto* sim = app.add_subcommand("simulate", "Inject errors, transmit and decode at every sink");
    sim->add_option("code", input, "Code file")->required();
    auto* msg_opt = sim->add_option("--message", message_text, "Message symbols (comma separated)");
    sim->add_option("--pattern", pattern_text, "Channel ids carrying errors (comma separated)");
    sim->add_option("--values", values_text, "Nonzero error values, one per pattern channel");
    auto* scen_opt = sim->add_option("--scenario", scenario, "JSON file with message, pattern and values");
    msg_opt->excludes(scen_opt);
    add_format(sim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*net_info) return cmd_net_info(c, input);
        if (*gen_comb) return cmd_gen_combination(c, comb_n, comb_k);
        if (*construct) return cmd_construct(c, input, attempts);
        if (*verify) return cmd_verify(c, input);
        if (*reduce) return cmd_reduce(c, input, k_text, strategy);
        if (*family) return cmd_family(c, input, strategy, family_rate->count() > 0, attempts);
        if (*prob) return cmd_prob(c, input, target);
        if (*sim) {
            if (message_text.empty() && scenario.empty()) throw Exit{usage, "simulate needs --message or --scenario"};
            return cmd_simulate(c, input, message_text, pattern_text, values_text, scenario);
        }
    } catch (const Exit& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const nec::ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return usage;
    } catch (const nec::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const nec::EnumerationCapError& e) {
        std::cerr << "enumeration limit: " << e.what() << "\n";
        return usage;
    } catch (const nec::ConstructionError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return construction_failed;
    } catch (const nec::FamilyError& e) {
        std::cerr << e.what() << "\n";
        return construction_failed;
    } catch (const nec::NoValidReductionVector& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return construction_failed;
    } catch (const nec::DomainError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return verification_failed;
    }
    return usage;
}

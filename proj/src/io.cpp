#include "nec/io.hpp"

#include <fstream>
#include <sstream>

#include "nec/errors.hpp"

namespace nec::io {

namespace {

const json& field_at(const json& doc, const char* key, const std::string& where) {
    if (!doc.is_object()) throw ParseError(where, "expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_at(const json& doc, const char* key, const std::string& where) {
    const auto& v = field_at(doc, key, where);
    if (!v.is_string()) throw ParseError(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> strings_at(const json& doc, const char* key, const std::string& where) {
    const auto& v = field_at(doc, key, where);
    const std::string here = where + "/" + key;
    if (!v.is_array()) throw ParseError(here, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) throw ParseError(here + "/" + std::to_string(i), "expected a string");
        out.push_back(v[i].get<std::string>());
    }
    return out;
}

std::uint64_t unsigned_at(const json& doc, const char* key, const std::string& where) {
    const auto& v = field_at(doc, key, where);
    if (!v.is_number_unsigned()) throw ParseError(where + "/" + key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string source_label(std::size_t i) { return "d'" + std::to_string(i + 1); }

json row_to_json(std::span<const Value> row) { return json(std::vector<Value>(row.begin(), row.end())); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ":byte " + std::to_string(e.byte), e.what());
    }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << dump(doc);
}

// ---------------------------------------------------------------------------

json network_to_json(const Network& n) {
    json doc;
    doc["nodes"] = n.node_names();
    doc["source"] = n.node_name(n.source());
    std::vector<std::string> sinks;
    for (NodeId t : n.sinks()) sinks.push_back(n.node_name(t));
    doc["sinks"] = sinks;
    json channels = json::array();
    for (const auto& c : n.channels()) {
        channels.push_back({{"id", c.id}, {"tail", n.node_name(c.tail)}, {"head", n.node_name(c.head)}});
    }
    doc["channels"] = channels;
    return doc;
}

Network network_from_json(const json& doc, const std::string& where) {
    auto nodes = strings_at(doc, "nodes", where);
    const auto source = string_at(doc, "source", where);
    const auto sinks = strings_at(doc, "sinks", where);
    const auto& chans = field_at(doc, "channels", where);
    if (!chans.is_array()) throw ParseError(where + "/channels", "expected an array");
    std::vector<ChannelSpec> specs;
    for (std::size_t i = 0; i < chans.size(); ++i) {
        const std::string here = where + "/channels/" + std::to_string(i);
        specs.push_back({string_at(chans[i], "id", here), string_at(chans[i], "tail", here),
                         string_at(chans[i], "head", here)});
    }
    try {
        return Network(std::move(nodes), source, sinks, specs);
    } catch (const UsageError& e) {
        throw ParseError(where, e.what());
    }
}

Network load_network(const std::filesystem::path& path) { return network_from_json(read_json(path), path.string()); }

// ---------------------------------------------------------------------------

json code_to_json(const NecCode& code) {
    const auto& n = code.network();
    const auto& lk = code.local_kernels();
    json kernels = json::object();
    for (NodeId v = 0; v < n.node_count(); ++v) {
        if (n.is_sink(v)) continue;
        std::vector<std::string> in;
        if (v == n.source()) {
            for (std::size_t i = 0; i < code.rate(); ++i) in.push_back(source_label(i));
        } else {
            for (ChannelId d : n.in(v)) in.push_back(n.channel(d).id);
        }
        std::vector<std::string> out;
        for (ChannelId e : n.out(v)) out.push_back(n.channel(e).id);
        json matrix = json::array();
        const auto& k = lk.kernel(v);
        for (std::size_t r = 0; r < k.rows(); ++r) matrix.push_back(row_to_json(k.row(r)));
        kernels[n.node_name(v)] = {{"in", in}, {"out", out}, {"matrix", matrix}};
    }
    return {{"field", code.field().modulus()}, {"rate", code.rate()}, {"network", network_to_json(n)}, {"kernels", kernels}};
}

NecCode code_from_json(const json& doc, const std::string& where) {
    const auto p = unsigned_at(doc, "field", where);
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) throw ParseError(where + "/field", "not a prime below 2^31");
    const PrimeField field(p);
    const auto rate = unsigned_at(doc, "rate", where);
    if (rate == 0) throw ParseError(where + "/rate", "rate must be at least 1");
    auto network = std::make_shared<const Network>(network_from_json(field_at(doc, "network", where), where + "/network"));
    const auto& n = *network;
    const auto& kernels = field_at(doc, "kernels", where);
    if (!kernels.is_object()) throw ParseError(where + "/kernels", "expected an object keyed by node id");

    LocalKernels lk(network, field, rate);
    for (auto it = kernels.begin(); it != kernels.end(); ++it) {
        const std::string here = where + "/kernels/" + it.key();
        NodeId v;
        try {
            v = n.node_index(it.key());
        } catch (const UsageError&) {
            throw ParseError(here, "unknown node");
        }
        if (n.is_sink(v)) throw ParseError(here, "sinks carry no kernel");
        std::vector<std::string> want_in;
        if (v == n.source()) {
            for (std::size_t i = 0; i < rate; ++i) want_in.push_back(source_label(i));
        } else {
            for (ChannelId d : n.in(v)) want_in.push_back(n.channel(d).id);
        }
        std::vector<std::string> want_out;
        for (ChannelId e : n.out(v)) want_out.push_back(n.channel(e).id);
        if (strings_at(it.value(), "in", here) != want_in) throw ParseError(here + "/in", "labels must list the node's inputs in network order");
        if (strings_at(it.value(), "out", here) != want_out) throw ParseError(here + "/out", "labels must list the node's outputs in network order");

        const auto& rows = field_at(it.value(), "matrix", here);
        if (!rows.is_array() || rows.size() != want_in.size()) {
            throw ParseError(here + "/matrix", "expected " + std::to_string(want_in.size()) + " rows");
        }
        FieldMatrix m(field, want_in.size(), want_out.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string row_where = here + "/matrix/" + std::to_string(r);
            if (!rows[r].is_array() || rows[r].size() != want_out.size()) {
                throw ParseError(row_where, "expected " + std::to_string(want_out.size()) + " entries");
            }
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                if (!rows[r][c].is_number_integer()) throw ParseError(row_where + "/" + std::to_string(c), "expected an integer");
                const auto value = rows[r][c].get<std::int64_t>();
                if (value < 0 || static_cast<std::uint64_t>(value) >= p) {
                    throw ParseError(row_where + "/" + std::to_string(c), "entry outside [0, " + std::to_string(p) + ")");
                }
                m.set(r, c, value);
            }
        }
        lk.set_kernel(v, std::move(m));
    }
    for (NodeId v = 0; v < n.node_count(); ++v) {
        if (!n.is_sink(v) && !kernels.contains(n.node_name(v))) {
            throw ParseError(where + "/kernels", "missing kernel for node '" + n.node_name(v) + "'");
        }
    }
    try {
        return NecCode(std::move(lk));
    } catch (const UsageError& e) {
        throw ParseError(where + "/network", e.what());
    }
}

NecCode load_code(const std::filesystem::path& path) { return code_from_json(read_json(path), path.string()); }

// ---------------------------------------------------------------------------

json pattern_to_json(const Network& n, const ErrorPattern& rho) {
    std::vector<std::string> ids;
    for (ChannelId e : rho.channels()) ids.push_back(n.channel(e).id);
    return ids;
}

ErrorPattern pattern_from_json(const Network& n, const json& doc, const std::string& where) {
    if (!doc.is_array()) throw ParseError(where, "expected an array of channel ids");
    std::vector<ChannelId> chans;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_string()) throw ParseError(where + "/" + std::to_string(i), "expected a channel id");
        try {
            chans.push_back(n.channel_index(doc[i].get<std::string>()));
        } catch (const UsageError& e) {
            throw ParseError(where + "/" + std::to_string(i), e.what());
        }
    }
    try {
        return ErrorPattern(std::move(chans));
    } catch (const UsageError& e) {
        throw ParseError(where, e.what());
    }
}

json distance_report_to_json(const NecCode& code, const DistanceReport& report) {
    const auto& n = code.network();
    json sinks = json::array();
    for (const auto& s : report.sinks) {
        json entry = {{"sink", n.node_name(s.sink)},
                      {"min_cut", s.min_cut},
                      {"redundancy", s.redundancy},
                      {"regular", s.regular},
                      {"mds", s.mds}};
        entry["d_min"] = s.distance ? json(*s.distance) : json(nullptr);
        entry["singleton_gap"] = s.singleton_gap() ? json(*s.singleton_gap()) : json(nullptr);
        entry["witness"] = s.witness ? pattern_to_json(n, *s.witness) : json(nullptr);
        sinks.push_back(entry);
    }
    return {{"kind", "distance"},
            {"field", code.field().modulus()},
            {"rate", report.rate},
            {"regular", report.regular},
            {"mds", report.is_mds},
            {"sinks", sinks}};
}

json probability_report_to_json(const TrialConfig& config, const ProbabilityReport& report) {
    json doc = {{"kind", "probability"},
                {"target", to_string(report.target)},
                {"field", config.field.modulus()},
                {"rate", config.rate},
                {"seed", config.master_seed},
                {"trials", report.trials},
                {"successes", report.successes},
                {"estimate", report.estimate},
                {"wilson95", {report.wilson_low, report.wilson_high}},
                {"mds_bound", optional_number(report.mds_bound)}};
    if (report.joint_bounds) {
        const auto& j = *report.joint_bounds;
        doc["joint_bound"] = {{"exact", optional_number(j.exact)},
                              {"forbidden_total", j.forbidden_total ? json(*j.forbidden_total) : json(nullptr)},
                              {"binomial", j.binomial},
                              {"binomial_simplified", optional_number(j.binomial_simplified)}};
    }
    if (report.family_heuristic) doc["family_heuristic"] = *report.family_heuristic;
    json failures = json::array();
    for (const auto& f : report.failures) failures.push_back({{"trial", f.index}, {"reason", f.reason}});
    doc["failures"] = failures;
    return doc;
}

json simulation_to_json(const NecCode& code, std::span<const Value> message, const ErrorPattern& rho,
                        std::span<const Value> values, const std::vector<SinkOutcome>& outcomes) {
    const auto& n = code.network();
    json sinks = json::array();
    for (const auto& o : outcomes) {
        json candidates = json::array();
        for (const auto& c : o.result.candidates) candidates.push_back(row_to_json(c));
        const bool correct = o.result.message && std::equal(message.begin(), message.end(), o.result.message->begin());
        sinks.push_back({{"sink", n.node_name(o.sink)},
                         {"received", row_to_json(o.received)},
                         {"decoded", o.result.message ? row_to_json(*o.result.message) : json(nullptr)},
                         {"weight", o.result.weight},
                         {"ambiguous", o.result.ambiguous()},
                         {"correct", correct},
                         {"candidates", candidates}});
    }
    return {{"kind", "simulation"},
            {"field", code.field().modulus()},
            {"rate", code.rate()},
            {"message", row_to_json(message)},
            {"pattern", pattern_to_json(n, rho)},
            {"values", row_to_json(values)},
            {"sinks", sinks}};
}

json hyperplanes_to_json(const NecCode& code, const std::vector<ForbiddenHyperplane>& hyperplanes) {
    const auto& n = code.network();
    json out = json::array();
    for (const auto& h : hyperplanes) {
        out.push_back({{"sink", n.node_name(h.sink)},
                       {"pattern", pattern_to_json(n, h.pattern)},
                       {"coefficients", row_to_json(h.coefficients)},
                       {"satisfiable", h.satisfiable()}});
    }
    return out;
}

// ---------------------------------------------------------------------------

void save_family(const std::filesystem::path& dir, const CodeFamily& family) {
    std::filesystem::create_directories(dir);
    json members = json::array();
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const auto& code = family.members[i];
        const std::string file = "code_w" + std::to_string(code.rate()) + ".json";
        write_json(dir / file, code_to_json(code));
        json entry = {{"rate", code.rate()}, {"file", file}, {"mds", family.reports[i].is_mds}};
        if (i < family.steps.size()) entry["reduction_vector"] = row_to_json(family.steps[i].values);
        entry["report"] = distance_report_to_json(code, family.reports[i]);
        members.push_back(entry);
    }
    write_json(dir / "manifest.json", {{"kind", "family"}, {"members", members}});
}

std::vector<NecCode> load_family(const std::filesystem::path& dir) {
    const auto manifest = read_json(dir / "manifest.json");
    const std::string where = (dir / "manifest.json").string();
    const auto& members = field_at(manifest, "members", where);
    if (!members.is_array()) throw ParseError(where + "/members", "expected an array");
    std::vector<NecCode> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        out.push_back(load_code(dir / string_at(members[i], "file", where + "/members/" + std::to_string(i))));
    }
    return out;
}

}  // namespace nec::io

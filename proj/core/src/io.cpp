#include "champ/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "champ/errors.hpp"

namespace champ {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open " + path);
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot write " + path);
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

double parse_weight(const std::string& tok, const std::string& path, int line_no) {
    try {
        std::size_t used = 0;
        double w = std::stod(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return w;
    } catch (const std::exception&) {
        throw validation_error(path + ":" + std::to_string(line_no) + ": bad weight '" + tok +
                               "'");
    }
}

std::int64_t parse_layer(const std::string& tok, const std::string& path, int line_no) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception&) {
        throw validation_error(path + ":" + std::to_string(line_no) + ": bad layer '" + tok +
                               "'");
    }
}

}  // namespace

Network read_network_file(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<NamedEdge> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::vector<std::string> tok = tokenize(line);
        if (tok.size() != 2 && tok.size() != 3) {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected 'src dst [weight]'");
        }
        double w = tok.size() == 3 ? parse_weight(tok[2], path, line_no) : 1.0;
        edges.push_back({tok[0], tok[1], w});
    }
    if (edges.empty()) {
        throw validation_error(path + ": no edges");
    }
    return build_network(edges);
}

MultilayerNetwork read_multilayer_file(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<MultilayerEdgeInput> intra;
    std::vector<MultilayerEdgeInput> inter;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::vector<std::string> tok = tokenize(line);
        if (tok.size() != 6) {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected 'i_actor i_layer j_actor j_layer weight kind'");
        }
        MultilayerEdgeInput e;
        e.actor_i = tok[0];
        e.layer_i = parse_layer(tok[1], path, line_no);
        e.actor_j = tok[2];
        e.layer_j = parse_layer(tok[3], path, line_no);
        e.w = parse_weight(tok[4], path, line_no);
        if (tok[5] == "intra") {
            intra.push_back(e);
        } else if (tok[5] == "inter") {
            inter.push_back(e);
        } else {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": kind must be 'intra' or 'inter'");
        }
    }
    return build_multilayer(intra, inter);
}

void attach_metadata(Network& net, const std::string& path) {
    std::ifstream in = open_in(path);
    std::unordered_map<std::string, int> by_name;
    for (int i = 0; i < net.node_count; ++i) {
        if (i < static_cast<int>(net.node_names.size())) {
            by_name[net.node_names[i]] = i;
        }
        by_name.try_emplace(std::to_string(i), i);  // numeric fallback
    }
    net.metadata_labels.assign(net.node_count, "");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::vector<std::string> tok = tokenize(line);
        if (tok.size() != 2) {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected 'node label'");
        }
        auto it = by_name.find(tok[0]);
        if (it != by_name.end()) {
            net.metadata_labels[it->second] = tok[1];
        }
    }
}

void attach_metadata(MultilayerNetwork& net, const std::string& path) {
    std::ifstream in = open_in(path);
    std::unordered_map<std::string, int> by_actor;
    for (int a = 0; a < net.actor_count; ++a) {
        by_actor[net.actor_names[a]] = a;
    }
    std::unordered_map<std::int64_t, int> layer_index;
    for (int s = 0; s < net.layer_count; ++s) {
        layer_index[net.layer_ids[s]] = s;
    }
    net.metadata_labels.assign(net.nodelayer_count, "");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::vector<std::string> tok = tokenize(line);
        if (tok.size() == 2) {
            auto it = by_actor.find(tok[0]);
            if (it == by_actor.end()) {
                continue;
            }
            for (int i = 0; i < net.nodelayer_count; ++i) {
                if (net.actor_of[i] == it->second) {
                    net.metadata_labels[i] = tok[1];
                }
            }
        } else if (tok.size() == 3) {
            auto it = by_actor.find(tok[0]);
            if (it == by_actor.end()) {
                continue;
            }
            auto ls = layer_index.find(parse_layer(tok[1], path, line_no));
            if (ls == layer_index.end()) {
                continue;
            }
            int i = net.nodelayer_index(it->second, ls->second);
            if (i >= 0) {
                net.metadata_labels[i] = tok[2];
            }
        } else {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected 'actor label' or 'actor layer label'");
        }
    }
}

std::vector<int> metadata_codes(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, int> remap;
    std::vector<int> codes(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        auto [it, inserted] = remap.try_emplace(labels[k], static_cast<int>(remap.size()));
        codes[k] = it->second;
    }
    return codes;
}

void write_ensemble_jsonl(const Ensemble& ens, const std::string& path) {
    struct Line {
        int run_index;
        const RunRecord* rec;
        const Partition* part;
    };
    std::vector<Line> lines;
    for (int id = 0; id < ens.size(); ++id) {
        for (const RunRecord& rec : ens.provenance(id)) {
            lines.push_back({rec.run_index, &rec, &ens.partition(id)});
        }
    }
    std::sort(lines.begin(), lines.end(),
              [](const Line& a, const Line& b) { return a.run_index < b.run_index; });
    std::ofstream out = open_out(path);
    for (const Line& l : lines) {
        ordered_json obj;
        obj["gamma"] = l.rec->gamma;
        if (l.rec->omega) {
            obj["omega"] = *l.rec->omega;
        } else {
            obj["omega"] = nullptr;
        }
        obj["seed"] = l.rec->seed;
        obj["labels"] = l.part->labels;
        out << obj.dump() << "\n";
    }
}

namespace {

template <typename Net>
Ensemble read_jsonl_impl(const Net& net, const std::string& path) {
    std::ifstream in = open_in(path);
    Ensemble ens(&net);
    std::string line;
    int run_index = 0;
    while (std::getline(in, line)) {
        if (skippable(line)) {
            continue;
        }
        ordered_json obj;
        try {
            obj = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw validation_error(path + ": bad JSON on run line " +
                                   std::to_string(run_index) + ": " + e.what());
        }
        RunRecord rec;
        rec.gamma = obj.value("gamma", 0.0);
        if (obj.contains("omega") && !obj["omega"].is_null()) {
            rec.omega = obj["omega"].get<double>();
        }
        rec.seed = obj.value("seed", 0ull);
        rec.run_index = run_index;
        Partition p(obj.at("labels").get<std::vector<int>>());
        ens.add(p, rec);
        ++run_index;
    }
    if (ens.size() == 0) {
        throw validation_error(path + ": empty ensemble");
    }
    return ens;
}

}  // namespace

Ensemble read_ensemble_jsonl(const Network& net, const std::string& path) {
    return read_jsonl_impl(net, path);
}

Ensemble read_ensemble_jsonl(const MultilayerNetwork& net, const std::string& path) {
    return read_jsonl_impl(net, path);
}

namespace {

std::string num(double v) { return ordered_json(v).dump(); }

}  // namespace

void write_coefficients_csv(const std::vector<CoefficientTriple>& triples,
                            const std::string& path) {
    std::ofstream out = open_out(path);
    out << "partition_id,a_hat,p_hat,c_hat,n_communities,n_communities_ge5\n";
    for (const CoefficientTriple& t : triples) {
        out << t.partition_id << ',' << num(t.a_hat) << ',' << num(t.p_hat) << ','
            << num(t.c_hat) << ',' << t.n_communities << ',' << t.n_communities_ge5 << "\n";
    }
}

namespace {

ordered_json domain_common(const CoefficientTriple& t, const std::vector<int>& aliases,
                           const DomainSummary* summary) {
    ordered_json obj;
    obj["partition_id"] = t.partition_id;
    obj["a_hat"] = t.a_hat;
    obj["p_hat"] = t.p_hat;
    obj["c_hat"] = t.c_hat;
    obj["n_communities"] = t.n_communities;
    obj["n_communities_ge5"] = t.n_communities_ge5;
    obj["label"] = summary ? summary->label : "";
    obj["aliases"] = aliases;
    return obj;
}

void attach_annotations(ordered_json& obj, const DomainAnnotations& ann, std::size_t k) {
    if (k < ann.neighbor_ami.size()) {
        obj["neighbor_ami"] = ann.neighbor_ami[k] ? ordered_json(*ann.neighbor_ami[k])
                                                  : ordered_json(nullptr);
    }
    if (k < ann.metadata_ami.size()) {
        obj["metadata_ami"] = ann.metadata_ami[k] ? ordered_json(*ann.metadata_ami[k])
                                                  : ordered_json(nullptr);
    }
}

}  // namespace

void write_domains_json(const DomainDocument& doc, const std::string& path) {
    ordered_json root;
    root["mode"] = doc.mode;
    root["box"] = doc.box;
    root["domains"] = ordered_json::array();
    if (doc.mode == "1d") {
        for (std::size_t k = 0; k < doc.domains_1d.size(); ++k) {
            const Domain1D& d = doc.domains_1d[k];
            ordered_json obj = domain_common(
                d.triple, d.aliases, k < doc.summary.domains.size() ? &doc.summary.domains[k]
                                                                    : nullptr);
            obj["interval"] = {d.gamma_lo, d.gamma_hi};
            attach_annotations(obj, doc.annotations, k);
            root["domains"].push_back(std::move(obj));
        }
    } else {
        for (std::size_t k = 0; k < doc.domains_2d.size(); ++k) {
            const Domain2D& d = doc.domains_2d[k];
            ordered_json obj = domain_common(
                d.triple, d.aliases, k < doc.summary.domains.size() ? &doc.summary.domains[k]
                                                                    : nullptr);
            ordered_json poly = ordered_json::array();
            for (const Point2& p : d.polygon) {
                poly.push_back({p.gamma, p.omega});
            }
            obj["polygon"] = std::move(poly);
            attach_annotations(obj, doc.annotations, k);
            root["domains"].push_back(std::move(obj));
        }
    }
    root["outside_box"] = ordered_json::array();
    for (const OutsideBoxEntry& e : doc.outside_box) {
        ordered_json obj;
        obj["partition_id"] = e.partition_id;
        obj["measure_zero"] = e.measure_zero;
        obj["aliases"] = e.aliases;
        root["outside_box"].push_back(std::move(obj));
    }
    root["transitions"] = doc.summary.transitions;
    std::ofstream out = open_out(path);
    out << root.dump(2) << "\n";
}

DomainDocument read_domains_json(const std::string& path) {
    std::ifstream in = open_in(path);
    ordered_json root;
    try {
        root = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw validation_error(path + ": bad JSON: " + std::string(e.what()));
    }
    DomainDocument doc;
    doc.mode = root.at("mode").get<std::string>();
    doc.box = root.at("box").get<std::vector<double>>();
    for (const ordered_json& obj : root.at("domains")) {
        CoefficientTriple t;
        t.partition_id = obj.at("partition_id").get<int>();
        t.a_hat = obj.at("a_hat").get<double>();
        t.p_hat = obj.at("p_hat").get<double>();
        t.c_hat = obj.at("c_hat").get<double>();
        t.n_communities = obj.at("n_communities").get<int>();
        t.n_communities_ge5 = obj.at("n_communities_ge5").get<int>();
        std::vector<int> aliases = obj.value("aliases", std::vector<int>{});
        DomainSummary s;
        s.partition_id = t.partition_id;
        s.n_communities = t.n_communities;
        s.n_communities_ge5 = t.n_communities_ge5;
        s.label = obj.value("label", std::string{});
        if (doc.mode == "1d") {
            auto interval = obj.at("interval").get<std::vector<double>>();
            doc.domains_1d.push_back({t.partition_id, interval.at(0), interval.at(1), t,
                                      aliases});
            s.extent = interval.at(1) - interval.at(0);
        } else {
            std::vector<Point2> poly;
            for (const ordered_json& p : obj.at("polygon")) {
                poly.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
            s.extent = polygon_area(poly);
            doc.domains_2d.push_back({t.partition_id, std::move(poly), t, aliases});
        }
        doc.summary.domains.push_back(std::move(s));
    }
    for (const ordered_json& obj : root.at("outside_box")) {
        doc.outside_box.push_back({obj.at("partition_id").get<int>(),
                                   obj.at("measure_zero").get<bool>(),
                                   obj.value("aliases", std::vector<int>{})});
    }
    doc.summary.transitions = root.value("transitions", std::vector<double>{});
    return doc;
}

void write_ami_matrix_csv(const std::vector<int>& partition_ids,
                          const std::vector<std::vector<double>>& matrix,
                          const std::string& path) {
    std::ofstream out = open_out(path);
    out << "partition_id";
    for (int id : partition_ids) {
        out << ',' << id;
    }
    out << "\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << partition_ids[i];
        for (double v : matrix[i]) {
            out << ',' << num(v);
        }
        out << "\n";
    }
}

void write_scatter_csv(const Ensemble& ens, const std::string& path) {
    struct Row {
        int run_index;
        const RunRecord* rec;
        const CoefficientTriple* t;
    };
    std::vector<Row> rows;
    for (int id = 0; id < ens.size(); ++id) {
        for (const RunRecord& rec : ens.provenance(id)) {
            rows.push_back({rec.run_index, &rec, &ens.triple(id)});
        }
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.run_index < b.run_index; });
    std::ofstream out = open_out(path);
    out << "run_index,gamma,omega,q_at_run,n_communities,n_communities_ge5\n";
    for (const Row& r : rows) {
        double omega = r.rec->omega.value_or(0.0);
        out << r.run_index << ',' << num(r.rec->gamma) << ',';
        if (r.rec->omega) {
            out << num(*r.rec->omega);
        }
        out << ',' << num(modularity_at(*r.t, r.rec->gamma, omega)) << ','
            << r.t->n_communities << ',' << r.t->n_communities_ge5 << "\n";
    }
}

}  // namespace champ

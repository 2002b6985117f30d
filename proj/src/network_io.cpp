#include "keygraph/network_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "keygraph/text.hpp"

namespace keygraph {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank line split into fields; empty vector at end of input.
    std::vector<std::string_view> next() {
        while (std::getline(in_, line_)) {
            ++number_;
            auto fields = split_ws(line_);
            if (!fields.empty()) return fields;
        }
        return {};
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("network dump line " + std::to_string(number_) + ": " + what);
    }

    template <class F>
    auto guarded(F&& f) const {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

private:
    std::istream& in_;
    std::string line_;
    int number_ = 0;
};

int to_int(std::string_view s) {
    const long long v = text::parse_int(s);
    if (v < INT32_MIN || v > INT32_MAX) throw std::invalid_argument("integer out of range");
    return static_cast<int>(v);
}

}  // namespace

void write_network(std::ostream& out, const SampledNetwork& net) {
    const ModelParams& p = net.params;
    out << p.node_count() << ' ' << p.pool_size() << ' ' << text::format_real(p.channel_on_prob())
        << ' ' << p.class_count() << '\n';
    out << text::join(p.class_probs(), " ") << '\n';
    out << text::join(p.ring_sizes(), " ") << '\n';
    for (std::size_t x = 0; x < net.classes.size(); ++x) {
        out << net.classes[x] + 1 << ' ' << net.keyrings[x].size();
        for (int key : net.keyrings[x]) out << ' ' << key;
        out << '\n';
    }
    for (const Edge& e : net.graph.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_network(const std::filesystem::path& path, const SampledNetwork& net) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_network(out, net);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

SampledNetwork read_network(std::istream& in) {
    LineReader reader(in);

    auto header = reader.next();
    if (header.size() != 4) reader.fail("expected header 'n P alpha r'");
    const int n = reader.guarded([&] { return to_int(header[0]); });
    const int pool = reader.guarded([&] { return to_int(header[1]); });
    const double alpha = reader.guarded([&] { return text::parse_real(header[2]); });
    const int r = reader.guarded([&] { return to_int(header[3]); });
    if (r < 1) reader.fail("class count must be positive");

    auto mu_fields = reader.next();
    if (static_cast<int>(mu_fields.size()) != r) reader.fail("expected " + std::to_string(r) + " class weights");
    std::vector<double> mu;
    for (auto f : mu_fields) mu.push_back(reader.guarded([&] { return text::parse_real(f); }));

    auto k_fields = reader.next();
    if (static_cast<int>(k_fields.size()) != r) reader.fail("expected " + std::to_string(r) + " ring sizes");
    std::vector<int> ring_sizes;
    for (auto f : k_fields) ring_sizes.push_back(reader.guarded([&] { return to_int(f); }));

    ModelParams params = reader.guarded([&] { return ModelParams(n, mu, ring_sizes, pool, alpha); });

    std::vector<int> classes(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> rings(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        auto fields = reader.next();
        if (fields.size() < 2) reader.fail("expected node line 'class keycount keys...'");
        const int cls = reader.guarded([&] { return to_int(fields[0]); }) - 1;
        const int count = reader.guarded([&] { return to_int(fields[1]); });
        if (cls < 0 || cls >= r) reader.fail("class label out of range");
        if (count != params.ring_size(cls)) reader.fail("key count does not match class ring size");
        if (static_cast<int>(fields.size()) != 2 + count) reader.fail("key count does not match keys listed");
        auto& ring = rings[static_cast<std::size_t>(x)];
        for (int i = 0; i < count; ++i) {
            const int key = reader.guarded([&] { return to_int(fields[static_cast<std::size_t>(2 + i)]); });
            if (key < 0 || key >= pool) reader.fail("key id out of range");
            if (!ring.empty() && key <= ring.back()) reader.fail("keys must be strictly increasing");
            ring.push_back(key);
        }
        classes[static_cast<std::size_t>(x)] = cls;
    }

    std::vector<Edge> edges;
    for (auto fields = reader.next(); !fields.empty(); fields = reader.next()) {
        if (fields.size() != 2) reader.fail("expected edge line 'u v'");
        edges.push_back({reader.guarded([&] { return to_int(fields[0]); }),
                         reader.guarded([&] { return to_int(fields[1]); })});
    }
    Graph graph = reader.guarded([&] { return Graph::from_edges(n, edges); });
    return SampledNetwork{std::move(params), std::move(classes), std::move(rings), std::move(graph),
                          std::nullopt, std::nullopt};
}

SampledNetwork read_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open network dump '" + path.string() + "'");
    return read_network(in);
}

}  // namespace keygraph

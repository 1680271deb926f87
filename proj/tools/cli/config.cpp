#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "asp/errors.hpp"

namespace aspcli {

using nlohmann::json;

ConfigError::ConfigError(std::string pointer, int line, const std::string& msg)
    : std::runtime_error(msg), pointer_(std::move(pointer)), line_(line) {}

namespace {

// Walks the text once, recording where each value begins. Assumes the text
// already parsed as JSON.
class LineScanner {
public:
    explicit LineScanner(const std::string& s) : s_(s) {}

    std::map<std::string, int> run() {
        skip();
        if (i_ < s_.size()) value("");
        return std::move(out_);
    }

private:
    void skip() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r' || s_[i_] == '\n')) {
            if (s_[i_] == '\n') ++line_;
            ++i_;
        }
    }
    std::string string_token() {
        std::string v;
        ++i_;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\') {
                ++i_;
                if (i_ < s_.size() && s_[i_] != 'u') v += s_[i_] == 'n' ? '\n' : s_[i_];
                else i_ += 4;  // \uXXXX; only used for pointer keys
            } else {
                v += s_[i_];
            }
            ++i_;
        }
        ++i_;
        return v;
    }
    static std::string escape(const std::string& key) {
        std::string r;
        for (char c : key) {
            if (c == '~') r += "~0";
            else if (c == '/') r += "~1";
            else r += c;
        }
        return r;
    }
    void value(const std::string& ptr) {
        out_[ptr] = line_;
        if (i_ >= s_.size()) return;
        const char c = s_[i_];
        if (c == '{') {
            ++i_;
            skip();
            while (i_ < s_.size() && s_[i_] != '}') {
                const std::string key = string_token();
                skip();
                ++i_;  // ':'
                skip();
                value(ptr + "/" + escape(key));
                skip();
                if (i_ < s_.size() && s_[i_] == ',') ++i_;
                skip();
            }
            ++i_;
        } else if (c == '[') {
            ++i_;
            skip();
            for (std::size_t k = 0; i_ < s_.size() && s_[i_] != ']'; ++k) {
                value(ptr + "/" + std::to_string(k));
                skip();
                if (i_ < s_.size() && s_[i_] == ',') ++i_;
                skip();
            }
            ++i_;
        } else if (c == '"') {
            string_token();
        } else {
            while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
                   s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
                ++i_;
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    std::map<std::string, int> out_;
};

template <class F>
auto wrap(const Node& node, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const asp::DomainError& e) {
        node.fail(e.what());
    } catch (const asp::InvalidGenerator& e) {
        node.fail(e.what());
    }
}

}  // namespace

std::map<std::string, int> pointer_lines(const std::string& text) { return LineScanner(text).run(); }

int Document::line_of(std::string pointer) const {
    while (true) {
        const auto it = lines.find(pointer);
        if (it != lines.end()) return it->second;
        if (pointer.empty()) return 0;
        pointer.erase(pointer.rfind('/'));
    }
}

Node::Node(std::shared_ptr<const Document> doc, const nlohmann::json* value, std::string pointer)
    : doc_(std::move(doc)), v_(value), ptr_(std::move(pointer)) {}

void Node::fail(const std::string& msg) const {
    throw ConfigError(ptr_.empty() ? "/" : ptr_, doc_->line_of(ptr_), msg);
}

bool Node::has(const std::string& key) const { return v_->is_object() && v_->contains(key); }

Node Node::operator[](const std::string& key) const {
    if (!v_->is_object()) fail("expected an object");
    const auto it = v_->find(key);
    if (it == v_->end()) fail("missing required field \"" + key + "\"");
    return Node(doc_, &*it, ptr_ + "/" + key);
}

Node Node::operator[](std::size_t i) const {
    if (!v_->is_array() || i >= v_->size()) fail("expected an array with at least " + std::to_string(i + 1) + " entries");
    return Node(doc_, &(*v_)[i], ptr_ + "/" + std::to_string(i));
}

std::size_t Node::size() const {
    if (!v_->is_array()) fail("expected an array");
    return v_->size();
}

double Node::number(bool allow_inf) const {
    if (allow_inf && v_->is_string()) {
        const auto s = v_->get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    if (!v_->is_number()) fail("expected a number");
    return v_->get<double>();
}

double Node::number_or(const std::string& key, double fallback) const {
    return has(key) ? (*this)[key].number() : fallback;
}

long long Node::integer() const {
    if (!v_->is_number_integer()) fail("expected an integer");
    return v_->get<long long>();
}

std::uint64_t Node::u64() const {
    if (v_->is_number_unsigned()) return v_->get<std::uint64_t>();
    if (v_->is_number_integer() && v_->get<long long>() >= 0) return static_cast<std::uint64_t>(v_->get<long long>());
    fail("expected a nonnegative 64-bit integer");
}

std::string Node::str() const {
    if (!v_->is_string()) fail("expected a string");
    return v_->get<std::string>();
}

std::vector<double> Node::numbers(bool allow_inf) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].number(allow_inf));
    return out;
}

void Node::only(std::initializer_list<const char*> keys) const {
    if (!v_->is_object()) fail("expected an object");
    for (const auto& [k, v] : v_->items()) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) Node(doc_, &v, ptr_ + "/" + k).fail("unknown field \"" + k + "\"");
    }
}

asp::genlaw::GeneratingLaw parse_law(const Node& node) {
    using asp::genlaw::GeneratingLaw;
    const std::string kind = node["kind"].str();
    if (kind == "point") {
        node.only({"kind", "r"});
        return wrap(node, [&] { return GeneratingLaw::point(node["r"].number()); });
    }
    if (kind == "mixture") {
        node.only({"kind", "atoms", "weights"});
        return wrap(node, [&] { return GeneratingLaw::mixture(node["atoms"].numbers(), node["weights"].numbers()); });
    }
    if (kind == "gamma") {
        node.only({"kind", "shape", "scale"});
        return wrap(node, [&] { return GeneratingLaw::gamma(node["shape"].number(), node.number_or("scale", 1.0)); });
    }
    if (kind == "table") {
        node.only({"kind", "grid", "values"});
        return wrap(node, [&] { return GeneratingLaw::table(node["grid"].numbers(), node["values"].numbers()); });
    }
    node["kind"].fail("unknown law kind \"" + kind + "\" (point, mixture, gamma, table)");
}

asp::genlaw::ArchGenerator parse_generator(const Node& node) {
    using asp::genlaw::ArchGenerator;
    const std::string kind = node["kind"].str();
    if (kind == "power") {
        node.only({"kind", "k"});
        const long long k = node["k"].integer();
        if (k < 1 || k > 64) node["k"].fail("power generator needs 1 <= k <= 64");
        return ArchGenerator::power(static_cast<int>(k));
    }
    if (kind == "exponential") {
        node.only({"kind"});
        return ArchGenerator::exponential();
    }
    if (kind == "clayton") {
        node.only({"kind", "theta"});
        return wrap(node["theta"], [&] { return ArchGenerator::clayton(node["theta"].number()); });
    }
    node["kind"].fail("unknown generator kind \"" + kind + "\" (power, exponential, clayton)");
}

asp::procs::ProcessSpec parse_process(const Node& node) {
    using asp::procs::ProcessSpec;
    node.only({"kind", "dim", "activity", "law"});
    const std::string kind = node["kind"].str();
    const auto law = parse_law(node["law"]);
    if (kind == "asp") {
        if (node.has("activity")) node["activity"].fail("an ASP has unit activities; use kind \"liouville\"");
        const long long n = node["dim"].integer();
        if (n < 2 || n > 1000) node["dim"].fail("dim must lie in [2, 1000]");
        return ProcessSpec::asp(static_cast<int>(n), law);
    }
    if (kind == "liouville") {
        const auto m = node["activity"].numbers();
        if (node.has("dim") && node["dim"].integer() != static_cast<long long>(m.size()))
            node["dim"].fail("dim does not match the activity vector");
        return wrap(node["activity"], [&] { return ProcessSpec::liouville(m, law); });
    }
    node["kind"].fail("unknown process kind \"" + kind + "\" (asp, liouville)");
}

asp::procs::TimeGrid parse_grid(const Node& node) {
    using asp::procs::TimeGrid;
    node.only({"steps", "times"});
    if (node.has("steps") == node.has("times")) node.fail("grid needs exactly one of \"steps\" or \"times\"");
    if (node.has("steps")) {
        const long long k = node["steps"].integer();
        if (k < 1 || k > TimeGrid::max_steps) node["steps"].fail("steps must lie in [1, 10000]");
        return TimeGrid::uniform(static_cast<int>(k));
    }
    const auto times = node["times"].numbers();
    const auto g = wrap(node["times"], [&] { return TimeGrid(times); });
    if (g.start() != 0.0) node["times"].fail("sampling grids must start at 0");
    return g;
}

RunConfig parse_config(const std::string& text) {
    auto doc = std::make_shared<Document>();
    try {
        doc->json = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < end; ++i) line += text[i] == '\n';
        throw ConfigError("", line, std::string("invalid JSON: ") + e.what());
    }
    doc->lines = pointer_lines(text);
    const Node root(doc, &doc->json, "");
    if (!root.is_object()) root.fail("configuration must be a JSON object");
    root.only({"process", "grid", "paths", "seed", "threads", "sampler", "output", "density", "moments", "copula",
               "validate", "transform"});

    RunConfig cfg(root);
    if (root.has("process")) cfg.process = parse_process(root["process"]);
    if (root.has("grid")) cfg.grid = parse_grid(root["grid"]);
    if (root.has("paths")) {
        const long long p = root["paths"].integer();
        if (p < 1) root["paths"].fail("paths must be at least 1");
        if (p > 100000000) root["paths"].fail("paths must be at most 1e8");
        cfg.paths = static_cast<std::size_t>(p);
    }
    if (root.has("seed")) cfg.seed = root["seed"].u64();
    if (root.has("threads")) {
        const long long t = root["threads"].integer();
        if (t < 1 || t > 1024) root["threads"].fail("threads must lie in [1, 1024]");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (root.has("sampler")) {
        const auto s = root["sampler"].str();
        using asp::procs::SamplerKind;
        if (s == "split") cfg.sampler = SamplerKind::split;
        else if (s == "stepping") cfg.sampler = SamplerKind::stepping;
        else if (s == "representation") cfg.sampler = SamplerKind::representation;
        else root["sampler"].fail("sampler must be split, stepping or representation");
    }
    if (root.has("output")) {
        const Node out = root["output"];
        out.only({"path", "format"});
        if (out.has("path")) cfg.out_path = out["path"].str();
        if (out.has("format")) cfg.format = out["format"].str();
        if (cfg.format != "csv" && cfg.format != "json") out["format"].fail("format must be csv or json");
    }
    return cfg;
}

RunConfig load_config(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("", 0, "cannot read config file " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace aspcli

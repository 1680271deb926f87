#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "asp/genlaw/generator.hpp"
#include "asp/genlaw/law.hpp"
#include "asp/procs/process.hpp"
#include "asp/procs/samplers.hpp"

namespace aspcli {

// Problem in the configuration, anchored at a JSON pointer and a source line
// (0 when unknown).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, int line, const std::string& msg);
    const std::string& pointer() const { return pointer_; }
    int line() const { return line_; }

private:
    std::string pointer_;
    int line_;
};

// Line on which the value at each JSON pointer starts.
std::map<std::string, int> pointer_lines(const std::string& text);

struct Document {
    nlohmann::json json;
    std::map<std::string, int> lines;
    int line_of(std::string pointer) const;  // nearest enclosing value with a line
};

// A value inside the document; errors name its pointer and line.
class Node {
public:
    Node(std::shared_ptr<const Document> doc, const nlohmann::json* value, std::string pointer);

    bool has(const std::string& key) const;
    Node operator[](const std::string& key) const;  // required member
    Node operator[](std::size_t i) const;
    std::size_t size() const;  // array length

    bool is_array() const { return v_->is_array(); }
    bool is_object() const { return v_->is_object(); }
    bool is_number() const { return v_->is_number(); }
    bool is_string() const { return v_->is_string(); }

    // "inf" and "-inf" strings are accepted where allow_inf is set.
    double number(bool allow_inf = false) const;
    double number_or(const std::string& key, double fallback) const;
    long long integer() const;
    std::uint64_t u64() const;
    std::string str() const;
    std::vector<double> numbers(bool allow_inf = false) const;
    // Fails on members other than these.
    void only(std::initializer_list<const char*> keys) const;

    [[noreturn]] void fail(const std::string& msg) const;
    const std::string& pointer() const { return ptr_; }
    const nlohmann::json& json() const { return *v_; }

private:
    std::shared_ptr<const Document> doc_;
    const nlohmann::json* v_;
    std::string ptr_;
};

asp::genlaw::GeneratingLaw parse_law(const Node& node);
asp::genlaw::ArchGenerator parse_generator(const Node& node);
asp::procs::ProcessSpec parse_process(const Node& node);
asp::procs::TimeGrid parse_grid(const Node& node);

struct RunConfig {
    explicit RunConfig(Node r) : root(std::move(r)) {}

    Node root;
    std::optional<asp::procs::ProcessSpec> process;
    std::optional<asp::procs::TimeGrid> grid;
    std::optional<std::size_t> paths;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    asp::procs::SamplerKind sampler = asp::procs::SamplerKind::split;
    std::string out_path;
    std::string format = "csv";

    bool has(const std::string& block) const { return root.has(block); }
    Node block(const std::string& name) const { return root[name]; }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& file);

}  // namespace aspcli

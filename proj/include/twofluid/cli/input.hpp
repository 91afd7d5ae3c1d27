#pragma once

// State files and run configurations (JSON), with errors that name the
// offending field path.

#include "twofluid/cli/format.hpp"
#include "twofluid/eos.hpp"
#include "twofluid/front.hpp"
#include "twofluid/jumps.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twofluid::cli {

class InputError : public std::runtime_error {
public:
    InputError(const std::string& path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct InputDocument {
    std::string name;  ///< file path as given
    std::string bytes; ///< raw contents, hashed into the report digest
    Json json;
};

InputDocument read_document(const std::string& path);
std::string slurp(const std::string& path);

/// Typed access to a JSON object with path-aware errors.
class Node {
public:
    Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const Json& json() const { return *j_; }
    const std::string& path() const { return path_; }
    bool has(const std::string& key) const;
    Node child(const std::string& key) const;
    std::optional<Node> optional_child(const std::string& key) const;

    double number() const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::optional<double> optional_number(const std::string& key) const;
    int integer(const std::string& key) const;
    int integer_or(const std::string& key, int fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    Vector3<double> vector3_or_zero(const std::string& key) const;
    /// A number or an array of numbers.
    std::vector<double> numbers(const std::string& key) const;

    [[noreturn]] void fail(const std::string& message) const { throw InputError(path_, message); }
    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        throw InputError(sub(key), message);
    }
    std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const Json* j_;
    std::string path_;
};

EosParams<double> parse_eos(const Node& node);
State<double> parse_state(const Node& node, const EosParams<double>& params);
FrontSlopes<double> parse_front(const Node& node);

struct RtInput {
    double dPdN_plus = 0;
    double dPdN_minus = 0;
};

struct StateFile {
    EosParams<double> params;
    std::optional<State<double>> state;
    std::optional<State<double>> minus;
    std::optional<State<double>> plus;
    FrontSlopes<double> front{};
    std::optional<double> lambda;
    Tolerances<double> tolerances;
    HugoniotOptions<double> solver;
    std::optional<RtInput> rt;

    bool two_sided() const { return minus && plus; }
};

StateFile parse_state_file(const Json& doc);

} // namespace twofluid::cli

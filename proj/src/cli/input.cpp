#include "twofluid/cli/input.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace twofluid::cli {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InputDocument read_document(const std::string& path) {
    InputDocument doc;
    doc.name = path;
    doc.bytes = slurp(path);
    try {
        doc.json = Json::parse(doc.bytes);
    } catch (const Json::parse_error& e) {
        throw InputError(path, std::string("JSON parse error: ") + e.what());
    }
    if (!doc.json.is_object()) throw InputError(path, "top level must be a JSON object");
    return doc;
}

bool Node::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Node Node::child(const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) fail(key, "missing required field");
    return Node(j_->at(key), sub(key));
}

std::optional<Node> Node::optional_child(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node(j_->at(key), sub(key));
}

double Node::number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("must be finite");
    return v;
}

double Node::number(const std::string& key) const { return child(key).number(); }

double Node::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::optional<double> Node::optional_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
}

int Node::integer(const std::string& key) const {
    const Node c = child(key);
    if (!c.json().is_number_integer()) c.fail("expected an integer");
    return c.json().get<int>();
}

int Node::integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Node::boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Node c = child(key);
    if (!c.json().is_boolean()) c.fail("expected true or false");
    return c.json().get<bool>();
}

std::string Node::string_or(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const Node c = child(key);
    if (!c.json().is_string()) c.fail("expected a string");
    return c.json().get<std::string>();
}

Vector3<double> Node::vector3_or_zero(const std::string& key) const {
    if (!has(key)) return Vector3<double>::Zero();
    const Node c = child(key);
    if (!c.json().is_array() || c.json().size() != 3) c.fail("expected an array of 3 numbers");
    Vector3<double> v;
    for (int i = 0; i < 3; ++i)
        v(i) = Node(c.json()[static_cast<std::size_t>(i)], c.path() + "[" + std::to_string(i) + "]").number();
    return v;
}

std::vector<double> Node::numbers(const std::string& key) const {
    const Node c = child(key);
    if (c.json().is_number()) return {c.number()};
    if (!c.json().is_array() || c.json().empty()) c.fail("expected a number or a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < c.json().size(); ++i)
        out.push_back(Node(c.json()[i], c.path() + "[" + std::to_string(i) + "]").number());
    return out;
}

EosParams<double> parse_eos(const Node& node) {
    EosParams<double> p{node.number("alpha"), node.number("gamma"), node.number("A")};
    if (!(p.alpha >= 1)) node.fail("alpha", "must be >= 1");
    if (!(p.gamma >= 1)) node.fail("gamma", "must be >= 1");
    if (!(p.bigA > 0)) node.fail("A", "must be > 0");
    return p;
}

State<double> parse_state(const Node& node, const EosParams<double>& /*params*/) {
    if (!node.json().is_object()) node.fail("expected an object");
    const Vector3<double> u = node.vector3_or_zero("u");
    const Vector3<double> H = node.vector3_or_zero("H");
    const bool densities = node.has("n") || node.has("rho");
    const bool rs = node.has("R") || node.has("S");
    if (densities && rs) node.fail("give either (n, rho) or (R, S), not both");
    if (densities) {
        const double n = node.number("n");
        const double rho = node.number("rho");
        if (!(n > 0)) node.fail("n", "must be > 0 (hyperbolicity requires n > 0)");
        if (!(rho >= 0)) node.fail("rho", "must be >= 0");
        return State<double>{n, rho, u, H};
    }
    if (rs) {
        const double R = node.number("R");
        const double S = node.number("S");
        if (!(R > 0)) node.fail("R", "must be > 0");
        if (!(S >= 0)) node.fail("S", "must be >= 0");
        return State<double>::from_RS(R, S, u, H);
    }
    node.fail("needs densities (n, rho) or (R, S)");
}

FrontSlopes<double> parse_front(const Node& node) {
    return FrontSlopes<double>{node.number_or("phi_t", 0.0), node.number_or("phi_2", 0.0),
                               node.number_or("phi_3", 0.0)};
}

StateFile parse_state_file(const Json& doc) {
    const Node root(doc, "");
    StateFile f;
    f.params = parse_eos(root.child("eos"));
    if (root.has("state")) f.state = parse_state(root.child("state"), f.params);
    if (root.has("minus") != root.has("plus")) root.fail("two-sided files need both \"minus\" and \"plus\"");
    if (root.has("minus")) {
        f.minus = parse_state(root.child("minus"), f.params);
        f.plus = parse_state(root.child("plus"), f.params);
    }
    if (!f.state && !f.two_sided()) root.fail("needs \"state\" or \"minus\"/\"plus\"");
    if (auto fr = root.optional_child("front")) f.front = parse_front(*fr);
    f.lambda = root.optional_number("lambda");
    if (auto t = root.optional_child("tolerances")) {
        f.tolerances.rh = t->number_or("rh", f.tolerances.rh);
        f.tolerances.j = t->number_or("j", f.tolerances.j);
        f.tolerances.R = t->number_or("R", f.tolerances.R);
        f.tolerances.H = t->number_or("H", f.tolerances.H);
        for (double v : {f.tolerances.rh, f.tolerances.j, f.tolerances.R, f.tolerances.H})
            if (!(v > 0)) t->fail("tolerances must be > 0");
    }
    if (auto s = root.optional_child("solver")) {
        const std::string fam = s->string_or("family", "fast");
        if (fam == "fast")
            f.solver.family = WaveFamily::fast;
        else if (fam == "slow")
            f.solver.family = WaveFamily::slow;
        else
            s->fail("family", "expected \"fast\" or \"slow\"");
        f.solver.max_step = s->number_or("max_step", f.solver.max_step);
        f.solver.min_step = s->number_or("min_step", f.solver.min_step);
        f.solver.max_newton_iterations = s->integer_or("max_newton_iterations", f.solver.max_newton_iterations);
        f.solver.tolerance = s->number_or("tolerance", f.solver.tolerance);
        if (!(f.solver.max_step > 0 && f.solver.min_step > 0 && f.solver.min_step <= f.solver.max_step))
            s->fail("need 0 < min_step <= max_step");
        if (f.solver.max_newton_iterations < 1) s->fail("max_newton_iterations", "must be >= 1");
        if (!(f.solver.tolerance > 0)) s->fail("tolerance", "must be > 0");
    }
    if (auto rt = root.optional_child("rt")) f.rt = RtInput{rt->number("dPdN_plus"), rt->number("dPdN_minus")};
    return f;
}

} // namespace twofluid::cli

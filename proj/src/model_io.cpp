#include <symchain/model.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace symchain {

namespace {

struct Line {
    std::size_t number;
    std::string keyword;
    std::string rest;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

Expression parse_at(const std::string& text, const VarTablePtr& vars, std::size_t line) {
    try {
        return parse_expression(text, vars);
    } catch (const ParseError& e) {
        throw ModelError(e.what(), line);
    }
}

std::string without_spaces(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch != ' ') out += ch;
    }
    return out;
}

}  // namespace

FirstOrderModel parse_model(std::string_view text) {
    std::optional<Line> name, vars, zeta, lag, c, h;
    std::vector<Line> primaries;
    std::istringstream in{std::string(text)};
    std::size_t number = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto space = line.find_first_of(" \t");
        Line l{number, line.substr(0, space), space == std::string::npos ? "" : trim(line.substr(space))};
        if (l.rest.empty()) throw ModelError("'" + l.keyword + "' needs a value", number);
        auto once = [&](std::optional<Line>& slot) {
            if (slot) throw ModelError("duplicate '" + l.keyword + "' line", number);
            slot = l;
        };
        if (l.keyword == "model") {
            once(name);
        } else if (l.keyword == "vars") {
            once(vars);
        } else if (l.keyword == "zeta") {
            once(zeta);
        } else if (l.keyword == "L") {
            once(lag);
        } else if (l.keyword == "c") {
            once(c);
        } else if (l.keyword == "H") {
            once(h);
        } else if (l.keyword == "primary") {
            primaries.push_back(l);
        } else {
            throw ModelError("unknown keyword '" + l.keyword + "'", number);
        }
    }

    if (!name) throw ModelError("missing 'model' line");
    const auto name_tokens = split_ws(name->rest);
    if (name_tokens.size() != 1) throw ModelError("model name must be a single word", name->number);

    if (vars.has_value() == zeta.has_value()) throw ModelError("exactly one of 'vars' or 'zeta' is required");
    if (lag && (c || h)) throw ModelError("'L' cannot be combined with 'c'/'H'", lag->number);

    if (vars) {
        if (!lag) throw ModelError("'vars' form requires an 'L' line", vars->number);
        if (c || h) throw ModelError("'c'/'H' belong to the 'zeta' form", (c ? c : h)->number);
        if (!primaries.empty()) {
            throw ModelError("primary constraints are derived in the 'vars' form", primaries.front().number);
        }
        try {
            SecondOrderLagrangian second(split_ws(vars->rest), lag->rest);
            return legendre_transform(second, name_tokens.front());
        } catch (const ParseError& e) {
            throw ModelError(e.what(), lag->number);
        } catch (const std::invalid_argument& e) {
            throw ModelError(e.what(), vars->number);
        }
    }

    if (lag) throw ModelError("'L' belongs to the 'vars' form", lag->number);
    if (!c || !h) throw ModelError("'zeta' form requires both 'c' and 'H'", zeta->number);
    PhaseSpace phase = [&] {
        try {
            return PhaseSpace(split_ws(zeta->rest), primaries.size());
        } catch (const ModelError& e) {
            throw ModelError(e.what(), zeta->number);
        }
    }();
    const auto& all = phase.all();
    std::vector<Expression> cs;
    for (const auto& tok : split_ws(c->rest)) cs.push_back(parse_at(tok, all, c->number));
    if (cs.size() != phase.dimension()) {
        throw ModelError("expected " + std::to_string(phase.dimension()) + " entries in 'c', got " +
                         std::to_string(cs.size()),
                         c->number);
    }
    std::vector<Expression> ps;
    for (const auto& p : primaries) ps.push_back(parse_at(p.rest, all, p.number));
    FirstOrderModel m{name_tokens.front(), phase, std::move(cs), parse_at(h->rest, all, h->number), std::move(ps)};
    m.validate();
    return m;
}

FirstOrderModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string format_model(const FirstOrderModel& m) {
    std::ostringstream out;
    out << "model " << m.name << '\n';
    out << "zeta ";
    for (std::size_t i = 0; i < m.phase.dimension(); ++i) out << (i ? " " : "") << m.phase.zeta()->name(i);
    out << "\nc ";
    for (std::size_t i = 0; i < m.c.size(); ++i) out << (i ? " " : "") << without_spaces(m.c[i].to_string());
    out << "\nH " << m.hamiltonian.to_string() << '\n';
    for (const auto& p : m.primaries) out << "primary " << p.to_string() << '\n';
    return out.str();
}

void save_model(const FirstOrderModel& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write model file '" + path.string() + "'");
    out << format_model(m);
}

}  // namespace symchain

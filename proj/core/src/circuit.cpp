// Copyright 2026 The quditsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quditsim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace quditsim {

WireSpec WireSpec::with_logical(int d) {
    if (d < 2) {
        throw std::invalid_argument("wire logical dimension must be >= 2, got " + std::to_string(d));
    }
    return WireSpec{d, d + 2};
}

const char *single_kind_token(SingleKind kind) {
    switch (kind) {
        case SingleKind::X:
            return "x";
        case SingleKind::Xinv:
            return "xinv";
        case SingleKind::Z:
            return "z";
        case SingleKind::F:
            return "f";
        case SingleKind::Finv:
            return "finv";
    }
    return "?";
}

std::vector<std::size_t> op_wires(const GateOp &op) {
    std::vector<std::size_t> wires;
    if (const auto *s = std::get_if<SingleOp>(&op)) {
        wires.push_back(s->wire);
    } else if (const auto *c = std::get_if<CincOp>(&op)) {
        wires.push_back(c->control);
        wires.push_back(c->target);
    } else if (const auto *p = std::get_if<CphaseOp>(&op)) {
        for (const auto &term : p->controls) {
            wires.push_back(term.wire);
        }
        wires.push_back(p->target);
    } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
        wires = m->controls;
        wires.push_back(m->target);
    }
    return wires;
}

bool op_touches_wire(const GateOp &op, std::size_t wire) {
    for (std::size_t w : op_wires(op)) {
        if (w == wire) {
            return true;
        }
    }
    return false;
}

std::string to_string(const Violation &violation) {
    if (violation.op_index == Violation::kNoOp) {
        return "wires: " + violation.rule;
    }
    return "op " + std::to_string(violation.op_index) + ": " + violation.rule;
}

namespace {

void check_wire_index(std::vector<Violation> &out, std::size_t op_index, const char *role, std::size_t wire,
                      std::size_t wire_count) {
    if (wire >= wire_count) {
        out.push_back({op_index, std::string(role) + " wire " + std::to_string(wire) + " out of range"});
    }
}

// Range checks only make sense once the wire index itself is valid.
bool wire_ok(std::size_t wire, std::size_t wire_count) {
    return wire < wire_count;
}

void check_distinct(std::vector<Violation> &out, std::size_t op_index, const std::vector<std::size_t> &wires) {
    std::set<std::size_t> seen(wires.begin(), wires.end());
    if (seen.size() != wires.size()) {
        out.push_back({op_index, "wires not distinct"});
    }
}

}  // namespace

std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    const std::size_t n = circuit.wires.size();

    for (std::size_t w = 0; w < n; ++w) {
        const WireSpec &spec = circuit.wires[w];
        if (spec.logical_dim < 2) {
            out.push_back({Violation::kNoOp, "wire " + std::to_string(w) + " logical_dim < 2"});
        }
        if (spec.physical_dim != spec.logical_dim + 2) {
            out.push_back({Violation::kNoOp, "wire " + std::to_string(w) + " physical_dim != logical_dim + 2"});
        }
    }

    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp &op = circuit.ops[i];
        if (const auto *s = std::get_if<SingleOp>(&op)) {
            check_wire_index(out, i, "target", s->wire, n);
            if (wire_ok(s->wire, n)) {
                if (s->modulus < 2 || s->modulus > circuit.wires[s->wire].physical_dim) {
                    out.push_back({i, "modulus out of range"});
                }
            }
        } else if (const auto *c = std::get_if<CincOp>(&op)) {
            check_wire_index(out, i, "control", c->control, n);
            check_wire_index(out, i, "target", c->target, n);
            if (c->control == c->target) {
                out.push_back({i, "wires not distinct"});
            }
            if (wire_ok(c->control, n) &&
                (c->control_value < 0 || c->control_value >= circuit.wires[c->control].physical_dim)) {
                out.push_back({i, "control_value out of range"});
            }
            if (wire_ok(c->target, n) && (c->modulus < 2 || c->modulus > circuit.wires[c->target].physical_dim)) {
                out.push_back({i, "modulus out of range"});
            }
            if (c->delta != 1 && c->delta != -1) {
                out.push_back({i, "delta must be +1 or -1"});
            }
        } else if (const auto *p = std::get_if<CphaseOp>(&op)) {
            std::vector<std::size_t> wires;
            for (const auto &term : p->controls) {
                check_wire_index(out, i, "control", term.wire, n);
                if (wire_ok(term.wire, n) &&
                    (term.value < 0 || term.value >= circuit.wires[term.wire].physical_dim)) {
                    out.push_back({i, "control_value out of range"});
                }
                wires.push_back(term.wire);
            }
            check_wire_index(out, i, "target", p->target, n);
            if (wire_ok(p->target, n) &&
                (p->target_value < 0 || p->target_value >= circuit.wires[p->target].physical_dim)) {
                out.push_back({i, "target_value out of range"});
            }
            wires.push_back(p->target);
            check_distinct(out, i, wires);
            if (!std::isfinite(p->phase)) {
                out.push_back({i, "phase not finite"});
            }
        } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
            if (m->controls.empty()) {
                out.push_back({i, "minc needs at least one control"});
            }
            std::vector<std::size_t> wires;
            for (std::size_t c : m->controls) {
                check_wire_index(out, i, "control", c, n);
                if (wire_ok(c, n) && (m->control_value < 0 || m->control_value >= circuit.wires[c].physical_dim)) {
                    out.push_back({i, "control_value out of range"});
                }
                wires.push_back(c);
            }
            check_wire_index(out, i, "target", m->target, n);
            if (wire_ok(m->target, n) && (m->modulus < 2 || m->modulus > circuit.wires[m->target].physical_dim)) {
                out.push_back({i, "modulus out of range"});
            }
            wires.push_back(m->target);
            check_distinct(out, i, wires);
        }
    }
    return out;
}

namespace {

std::string format_phase(double phase) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", phase);
    return buf;
}

}  // namespace

std::string emit(const Circuit &circuit) {
    auto violations = validate(circuit);
    if (!violations.empty()) {
        std::string msg = "cannot emit invalid circuit:";
        for (const auto &v : violations) {
            msg += "\n  " + to_string(v);
        }
        throw std::invalid_argument(msg);
    }

    std::ostringstream out;
    out << "wires";
    for (const WireSpec &spec : circuit.wires) {
        out << ' ' << spec.physical_dim;
    }
    out << '\n';

    for (const GateOp &op : circuit.ops) {
        if (const auto *s = std::get_if<SingleOp>(&op)) {
            out << single_kind_token(s->kind) << " w=" << s->wire << " m=" << s->modulus << '\n';
        } else if (const auto *c = std::get_if<CincOp>(&op)) {
            out << "cinc c=" << c->control << " v=" << c->control_value << " t=" << c->target << " m=" << c->modulus
                << " delta=" << (c->delta > 0 ? "+1" : "-1") << '\n';
        } else if (const auto *p = std::get_if<CphaseOp>(&op)) {
            out << "cphase ctrls=";
            for (std::size_t k = 0; k < p->controls.size(); ++k) {
                if (k) {
                    out << ',';
                }
                out << p->controls[k].wire << ':' << p->controls[k].value;
            }
            out << " t=" << p->target << " tv=" << p->target_value << " phase=" << format_phase(p->phase) << '\n';
        } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
            out << "minc ctrls=";
            for (std::size_t k = 0; k < m->controls.size(); ++k) {
                if (k) {
                    out << ',';
                }
                out << m->controls[k];
            }
            out << " v=" << m->control_value << " t=" << m->target << " m=" << m->modulus << '\n';
        }
    }
    return out.str();
}

namespace {

struct LineLexer {
    std::size_t line_no;
    std::vector<std::string_view> tokens;
    std::size_t next = 0;

    bool done() const {
        return next >= tokens.size();
    }

    std::string_view take(const char *what) {
        if (done()) {
            throw ParseError(line_no, std::string("missing ") + what);
        }
        return tokens[next++];
    }

    void expect_end() const {
        if (!done()) {
            throw ParseError(line_no, "unexpected token '" + std::string(tokens[next]) + "'");
        }
    }
};

long long parse_int(std::string_view text, std::size_t line_no, const char *what) {
    long long value = 0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') {
        ++first;  // std::from_chars rejects a leading '+'
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
        throw ParseError(line_no, std::string("bad integer for ") + what + ": '" + std::string(text) + "'");
    }
    return value;
}

double parse_float(std::string_view text, std::size_t line_no, const char *what) {
    std::string buf(text);
    char *end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw ParseError(line_no, std::string("bad number for ") + what + ": '" + buf + "'");
    }
    return value;
}

// "key=value" with a required key; value may be empty (used by ctrls=).
std::string_view expect_kv(std::string_view token, const char *key, std::size_t line_no) {
    std::size_t eq = token.find('=');
    if (eq == std::string_view::npos || token.substr(0, eq) != key) {
        throw ParseError(line_no, std::string("expected ") + key + "=..., got '" + std::string(token) + "'");
    }
    return token.substr(eq + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace

Circuit parse(std::string_view text) {
    Circuit circuit;
    bool saw_wires = false;
    std::size_t line_no = 0;
    std::size_t start = 0;

    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        LineLexer lex{line_no, {}, 0};
        for (std::string_view tok : split(line, ' ')) {
            if (!tok.empty()) {
                lex.tokens.push_back(tok);
            }
        }
        if (lex.tokens.empty()) {
            continue;
        }

        std::string_view head = lex.take("directive");
        if (!saw_wires) {
            if (head != "wires") {
                throw ParseError(line_no, "expected 'wires' header");
            }
            while (!lex.done()) {
                long long phys = parse_int(lex.take("dimension"), line_no, "wire dimension");
                if (phys < 4) {
                    throw ParseError(line_no, "physical dimension must be >= 4, got " + std::to_string(phys));
                }
                circuit.wires.push_back(WireSpec{static_cast<int>(phys) - 2, static_cast<int>(phys)});
            }
            saw_wires = true;
            continue;
        }

        if (head == "x" || head == "xinv" || head == "z" || head == "f" || head == "finv") {
            SingleOp op;
            op.kind = head == "x"      ? SingleKind::X
                      : head == "xinv" ? SingleKind::Xinv
                      : head == "z"    ? SingleKind::Z
                      : head == "f"    ? SingleKind::F
                                       : SingleKind::Finv;
            op.wire = static_cast<std::size_t>(parse_int(expect_kv(lex.take("w"), "w", line_no), line_no, "w"));
            op.modulus = static_cast<int>(parse_int(expect_kv(lex.take("m"), "m", line_no), line_no, "m"));
            lex.expect_end();
            circuit.ops.emplace_back(op);
        } else if (head == "cinc") {
            CincOp op;
            op.control = static_cast<std::size_t>(parse_int(expect_kv(lex.take("c"), "c", line_no), line_no, "c"));
            op.control_value = static_cast<int>(parse_int(expect_kv(lex.take("v"), "v", line_no), line_no, "v"));
            op.target = static_cast<std::size_t>(parse_int(expect_kv(lex.take("t"), "t", line_no), line_no, "t"));
            op.modulus = static_cast<int>(parse_int(expect_kv(lex.take("m"), "m", line_no), line_no, "m"));
            std::string_view delta = expect_kv(lex.take("delta"), "delta", line_no);
            if (delta == "+1") {
                op.delta = +1;
            } else if (delta == "-1") {
                op.delta = -1;
            } else {
                throw ParseError(line_no, "delta must be +1 or -1, got '" + std::string(delta) + "'");
            }
            lex.expect_end();
            circuit.ops.emplace_back(op);
        } else if (head == "cphase") {
            CphaseOp op;
            std::string_view ctrls = expect_kv(lex.take("ctrls"), "ctrls", line_no);
            if (!ctrls.empty()) {
                for (std::string_view part : split(ctrls, ',')) {
                    std::size_t colon = part.find(':');
                    if (colon == std::string_view::npos) {
                        throw ParseError(line_no, "bad control term '" + std::string(part) + "'");
                    }
                    ControlTerm term;
                    term.wire = static_cast<std::size_t>(parse_int(part.substr(0, colon), line_no, "control wire"));
                    term.value = static_cast<int>(parse_int(part.substr(colon + 1), line_no, "control value"));
                    op.controls.push_back(term);
                }
            }
            op.target = static_cast<std::size_t>(parse_int(expect_kv(lex.take("t"), "t", line_no), line_no, "t"));
            op.target_value =
                static_cast<int>(parse_int(expect_kv(lex.take("tv"), "tv", line_no), line_no, "tv"));
            op.phase = parse_float(expect_kv(lex.take("phase"), "phase", line_no), line_no, "phase");
            lex.expect_end();
            circuit.ops.emplace_back(op);
        } else if (head == "minc") {
            MultiIncOp op;
            std::string_view ctrls = expect_kv(lex.take("ctrls"), "ctrls", line_no);
            if (!ctrls.empty()) {
                for (std::string_view part : split(ctrls, ',')) {
                    op.controls.push_back(static_cast<std::size_t>(parse_int(part, line_no, "control wire")));
                }
            }
            op.control_value = static_cast<int>(parse_int(expect_kv(lex.take("v"), "v", line_no), line_no, "v"));
            op.target = static_cast<std::size_t>(parse_int(expect_kv(lex.take("t"), "t", line_no), line_no, "t"));
            op.modulus = static_cast<int>(parse_int(expect_kv(lex.take("m"), "m", line_no), line_no, "m"));
            lex.expect_end();
            circuit.ops.emplace_back(op);
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(head) + "'");
        }
    }

    if (!saw_wires) {
        throw ParseError(1, "missing 'wires' header");
    }

    auto violations = validate(circuit);
    if (!violations.empty()) {
        throw ParseError(line_no, "parsed circuit is invalid: " + to_string(violations.front()));
    }
    return circuit;
}

}  // namespace quditsim

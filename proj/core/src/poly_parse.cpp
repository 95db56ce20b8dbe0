#include <cctype>
#include <sstream>

#include "tophier/diff_poly.hpp"

namespace tophier {

// ------------------------------------------------------------- serialization

namespace {

void print_power(std::ostringstream& os, int e) {
    if (e != 1) os << '^' << e;
}

}  // namespace

std::string DiffPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending canonical order, leading term first
    for (auto it = d_.num.rbegin(); it != d_.num.rend(); ++it) {
        Monomial m = it->first;
        Rat c = it->second;
        std::vector<std::int32_t> den = d_.den;

        // cancel single-monomial atom powers into the term
        for (std::size_t i = 0; i < den.size(); ++i) {
            if (den[i] == 0 || !ctx_->den_atom(i).is_monomial) continue;
            const auto& [am, ac] = *ctx_->den_atom(i).poly.num.begin();
            while (den[i] > 0) {
                auto q = Monomial::try_div(m, am);
                if (!q) break;
                bool clean = true;
                for (const auto& [id, e] : q->f)
                    if (e < 0 && !Monomial::is_exp(id)) clean = false;
                if (!clean) break;
                m = *q;
                c /= ac;
                --den[i];
            }
        }

        if (first) {
            if (c.sign() < 0) os << '-';
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        Rat ac = c.abs();

        std::vector<std::string> factors;
        for (const auto& [id, e] : m.f) {
            std::ostringstream fs;
            if (Monomial::is_jet(id)) {
                fs << "v[" << ctx_->comp_label(Monomial::jet_comp(id)) << "]_"
                   << Monomial::jet_order(id);
            } else if (Monomial::is_exp(id)) {
                fs << "exp{" << ctx_->exp_atom(id - Monomial::kExpBase).label << '}';
            } else {
                fs << "log{" << ctx_->den_atom(id - Monomial::kLogBase).label << '}';
            }
            print_power(fs, e);
            factors.push_back(fs.str());
        }
        for (std::size_t i = 0; i < den.size(); ++i) {
            if (den[i] == 0) continue;
            std::ostringstream fs;
            fs << "inv{" << ctx_->den_atom(i).label << '}';
            print_power(fs, den[i]);
            factors.push_back(fs.str());
        }

        if (factors.empty()) {
            os << ac.str();
        } else {
            if (!ac.is_one()) os << ac.str() << '*';
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) os << '*';
                os << factors[i];
            }
        }
    }
    return os.str();
}

// --------------------------------------------------------------------- parse

namespace {

class Parser {
public:
    Parser(JetContextPtr ctx, std::string_view text) : ctx_(std::move(ctx)), s_(text) {}

    DiffPoly run() {
        DiffPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        raise(ErrorKind::ParseError,
              "parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    DiffPoly expr() {
        DiffPoly acc = DiffPoly::zero(ctx_);
        bool neg = eat('-');
        acc += term() * Rat(neg ? -1 : 1);
        while (true) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    DiffPoly term() {
        DiffPoly acc = factor();
        while (true) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("'/' must be followed by an integer literal");
                Rat r = number();
                acc *= r.inverse();
            } else {
                break;
            }
        }
        return acc;
    }

    DiffPoly factor() {
        bool neg = eat('-');
        DiffPoly p = primary();
        skip_ws();
        if (eat('^')) {
            bool eneg = eat('-');
            long e = integer();
            p = p.pow(static_cast<int>(eneg ? -e : e));
        }
        if (neg) p *= Rat(-1);
        return p;
    }

    DiffPoly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            DiffPoly p = expr();
            if (!eat(')')) fail("missing ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return DiffPoly::constant(ctx_, number());
        }
        if (c == 'v' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '[') return jet();
        if (match_kw("exp{")) {
            std::string lbl = label('}');
            int i = ctx_->exp_atom_index(lbl);
            if (i < 0) fail("unknown exp atom '" + lbl + "'");
            return DiffPoly::exp_atom(ctx_, i);
        }
        if (match_kw("log{")) {
            std::string lbl = label('}');
            int i = ctx_->den_atom_index(lbl);
            if (i < 0 || !ctx_->den_atom(i).has_log) fail("unknown log atom '" + lbl + "'");
            return DiffPoly::log_atom(ctx_, i);
        }
        if (match_kw("inv{")) {
            std::string lbl = label('}');
            int i = ctx_->den_atom_index(lbl);
            if (i < 0) fail("unknown denominator atom '" + lbl + "'");
            return DiffPoly::inv_atom(ctx_, i);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    bool match_kw(std::string_view kw) {
        skip_ws();
        if (s_.substr(pos_, kw.size()) == kw) {
            pos_ += kw.size();
            return true;
        }
        return false;
    }

    std::string label(char close) {
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != close) out.push_back(s_[pos_++]);
        if (pos_ >= s_.size()) fail("unterminated label");
        ++pos_;  // close
        return out;
    }

    DiffPoly jet() {
        pos_ += 2;  // "v["
        std::string lbl = label(']');
        int comp = ctx_->comp_index(lbl);
        if (comp < 0) fail("unknown component '" + lbl + "'");
        if (pos_ >= s_.size() || s_[pos_] != '_') fail("jet needs '_<order>'");
        ++pos_;
        long k = integer();
        return DiffPoly::jet(ctx_, comp, static_cast<int>(k));
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Rat number() {
        long n = integer();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                long d = integer();
                return Rat(n, d);
            }
            pos_ = save;
        }
        return Rat(n);
    }

    JetContextPtr ctx_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

DiffPoly DiffPoly::parse(JetContextPtr ctx, std::string_view text) {
    return Parser(std::move(ctx), text).run();
}

}  // namespace tophier

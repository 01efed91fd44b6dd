#include "diskvolt/symbols.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

namespace diskvolt {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    const SymbolContext& ctx;

    [[noreturn]] void fail(const std::string& what) const {
        throw SymbolParseError("symbol parse error at position " + std::to_string(pos) + ": " +
                                   what,
                               pos);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return std::string(text.substr(start, pos - start));
    }

    double real_number() {
        skip_ws();
        const char* begin = text.data() + pos;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        pos += static_cast<std::size_t>(end - begin);
        return value;
    }

    Complex complex_number() {
        double first = real_number();
        if (consume('i')) return Complex(0.0, first);
        skip_ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            // lookahead: a sign immediately followed by a number and 'i'
            const std::size_t save = pos;
            const double second = real_number();
            if (consume('i')) return Complex(first, second);
            pos = save;  // the sign belonged to an enclosing expression
        }
        return Complex(first, 0.0);
    }

    std::map<std::string, Complex> named_args(const std::vector<std::string>& allowed) {
        std::map<std::string, Complex> args;
        expect('(');
        while (true) {
            const std::string key = ident();
            bool ok = false;
            for (const auto& name : allowed) ok = ok || name == key;
            if (!ok) fail("unknown argument '" + key + "'");
            expect('=');
            if (!args.emplace(key, complex_number()).second) fail("duplicate argument '" + key + "'");
            if (consume(',')) continue;
            expect(')');
            break;
        }
        return args;
    }

    double real_arg(const std::map<std::string, Complex>& args, const std::string& key) {
        const Complex c = args.at(key);
        if (c.imag() != 0.0) fail("argument '" + key + "' must be real");
        return c.real();
    }

    AnalyticFn factor() {
        const std::string name = ident();
        if (name == "pow") {
            auto args = named_args({"a", "gamma", "c"});
            if (!args.count("a") || !args.count("gamma")) fail("pow requires a= and gamma=");
            const Complex scale = args.count("c") ? args.at("c") : Complex(1.0);
            return AnalyticFn::power_kernel(args.at("a"), real_arg(args, "gamma"), scale);
        }
        if (name == "log") {
            auto args = named_args({"a", "m", "c"});
            if (!args.count("a") || !args.count("m")) fail("log requires a= and m=");
            const double m = real_arg(args, "m");
            if (m < 1.0 || m != std::floor(m)) fail("log argument m must be a positive integer");
            const Complex scale = args.count("c") ? args.at("c") : Complex(1.0);
            return AnalyticFn::log_kernel(args.at("a"), static_cast<int>(m), scale);
        }
        if (name == "poly") {
            expect('(');
            std::vector<Complex> coeffs;
            coeffs.push_back(complex_number());
            while (consume(',')) coeffs.push_back(complex_number());
            expect(')');
            return AnalyticFn::series(std::move(coeffs));
        }
        if (name == "fa") {
            auto args = named_args({"a"});
            if (!args.count("a")) fail("fa requires a=");
            if (!ctx.space) fail("fa requires space parameters (p, alpha)");
            const Complex a = args.at("a");
            if (!(std::abs(a) < 1.0)) fail("fa base must satisfy |a| < 1");
            return peak_kernel(a, *ctx.space);
        }
        fail("unknown symbol '" + name + "'");
    }

    AnalyticFn term() {
        std::vector<AnalyticFn> factors;
        factors.push_back(factor());
        while (consume('*')) factors.push_back(factor());
        return AnalyticFn::product(std::move(factors));
    }

    AnalyticFn expr() {
        std::vector<AnalyticFn> terms;
        terms.push_back(term());
        while (consume('+')) terms.push_back(term());
        return AnalyticFn::sum(std::move(terms));
    }

    AnalyticFn parse() {
        AnalyticFn out = expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return out;
    }
};

}  // namespace

AnalyticFn parse_symbol(std::string_view text, const SymbolContext& ctx) {
    try {
        Parser parser{text, 0, ctx};
        return parser.parse();
    } catch (const SymbolParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SymbolParseError(std::string("symbol parse error: ") + e.what(), 0);
    }
}

}  // namespace diskvolt

#include "clonescope/corpus/templates.hpp"

#include <array>
#include <span>
#include <string_view>

namespace clonescope::corpus {

namespace {

constexpr std::array<std::string_view, 28> kStems = {
    "amount", "value", "total", "count",  "rate",    "fee",     "bonus",  "reward", "limit",    "price",
    "supply", "stake", "share", "index",  "cap",     "deadline", "start", "period", "duration", "weight",
    "quota",  "score", "round", "budget", "deposit", "payout",  "epoch",  "margin",
};
constexpr std::array<std::string_view, 10> kAddrStems = {
    "owner", "spender", "recipient", "wallet", "beneficiary", "admin", "operator", "holder", "target", "vault",
};
constexpr std::array<std::string_view, 8> kMappings = {
    "balances", "allowed", "deposits", "rewards", "stakes", "credits", "locked", "claimed",
};
constexpr std::array<std::string_view, 4> kFlagMappings = {"whitelist", "frozen", "voted", "paid"};
constexpr std::array<std::string_view, 8> kEvents = {
    "Transfer", "Approval", "Deposit", "Withdraw", "Claim", "Update", "Lock", "Release",
};
constexpr std::array<std::string_view, 11> kIntTypes = {
    "uint", "uint256", "uint8", "uint16", "uint32", "uint64", "uint128", "int", "int256", "int64", "uint256",
};
constexpr std::array<std::string_view, 6> kUnits = {"ether", "wei", "days", "hours", "minutes", "seconds"};
constexpr std::array<std::string_view, 6> kArith = {"+", "-", "*", "/", "%", "**"};
constexpr std::array<std::string_view, 6> kCompare = {"<", ">", "<=", ">=", "==", "!="};
constexpr std::array<std::string_view, 4> kSafeMath = {"add", "sub", "mul", "div"};
constexpr std::array<std::string_view, 5> kCompound = {"+=", "-=", "*=", "/=", "%="};

template <class T, std::size_t N>
std::string pick(Rng& rng, const std::array<T, N>& xs) {
    return std::string(xs[rng.index(N)]);
}

class Generator {
public:
    explicit Generator(Rng& rng) : rng_(rng) {}

    std::string function(const std::string& name) {
        const int n_params = static_cast<int>(rng_.uniform_int(1, 3));
        std::string header = "function " + name + "(";
        for (int i = 0; i < n_params; ++i) {
            if (i > 0) header += ", ";
            if (rng_.bernoulli(0.35)) {
                const auto p = fresh_addr();
                header += "address " + p;
                addrs_.push_back(p);
            } else {
                const auto p = "_" + fresh_num();
                header += pick(rng_, kIntTypes) + " " + p;
                nums_.push_back(p);
            }
        }
        header += ") public";
        const bool returns = rng_.bernoulli(0.5);
        if (returns) header += " returns (" + std::string(rng_.bernoulli(0.5) ? "bool" : "uint256") + ")";
        header += " {\n";

        const int n_stmts = static_cast<int>(rng_.uniform_int(5, 9));
        std::string body;
        for (int i = 0; i < n_stmts; ++i) {
            if (returns && i == n_stmts - 1) {
                body += "    return " + (rng_.bernoulli(0.5) ? bool_expr(1) : num_expr(1)) + ";\n";
            } else {
                body += statement(1, true);
            }
        }
        return header + body + "}\n";
    }

private:
    std::string indent(int depth) const { return std::string(static_cast<std::size_t>(4 * depth), ' '); }

    std::string fresh_num() {
        auto s = pick(rng_, kStems);
        return s + std::to_string(counter_++);
    }

    std::string fresh_addr() {
        auto s = pick(rng_, kAddrStems);
        return s + std::to_string(counter_++);
    }

    std::string num_var() {
        if (nums_.empty() || rng_.bernoulli(0.15)) return fresh_num();
        return nums_[rng_.index(nums_.size())];
    }

    std::string addr_expr() {
        switch (rng_.index(6)) {
            case 0:
            case 1: return "msg.sender";
            case 2: return "tx.origin";
            case 3: return "address(this)";
            default:
                if (addrs_.empty()) return "msg.sender";
                return addrs_[rng_.index(addrs_.size())];
        }
    }

    std::string literal() {
        switch (rng_.index(5)) {
            case 0: return std::to_string(rng_.uniform_int(0, 9));
            case 1: return std::to_string(rng_.uniform_int(10, 100));
            case 2: return std::to_string(rng_.uniform_int(100, 100000));
            case 3: return std::to_string(rng_.uniform_int(1, 30)) + " " + pick(rng_, kUnits);
            default: return "10 ** " + std::to_string(rng_.uniform_int(2, 18));
        }
    }

    std::string num_atom() {
        switch (rng_.index(9)) {
            case 0:
            case 1:
            case 2: return num_var();
            case 3:
            case 4: return literal();
            case 5: return "msg.value";
            case 6: return rng_.bernoulli(0.5) ? "block.timestamp" : "block.number";
            case 7: return pick(rng_, kMappings) + "[" + addr_expr() + "]";
            default: return pick(rng_, kIntTypes) + "(" + num_var() + ")";
        }
    }

    std::string num_expr(int depth) {
        if (depth >= 3 || rng_.bernoulli(0.3)) return num_atom();
        switch (rng_.index(4)) {
            case 0: return num_var() + "." + pick(rng_, kSafeMath) + "(" + num_expr(depth + 1) + ")";
            case 1: return "(" + num_expr(depth + 1) + " " + pick(rng_, kArith) + " " + num_atom() + ")";
            default: return num_expr(depth + 1) + " " + pick(rng_, kArith) + " " + num_expr(depth + 1);
        }
    }

    std::string bool_expr(int depth) {
        if (depth < 2 && rng_.bernoulli(0.25))
            return bool_expr(depth + 1) + (rng_.bernoulli(0.5) ? " && " : " || ") + bool_expr(depth + 1);
        switch (rng_.index(6)) {
            case 0: return pick(rng_, kFlagMappings) + "[" + addr_expr() + "]";
            case 1: return "!" + pick(rng_, kFlagMappings) + "[" + addr_expr() + "]";
            case 2: return addr_expr() + " != address(0)";
            default: return num_expr(depth + 1) + " " + pick(rng_, kCompare) + " " + num_expr(depth + 1);
        }
    }

    std::string statement(int depth, bool top) {
        const std::string in = indent(depth);
        const std::size_t choice = rng_.index(top ? 13 : 9);
        switch (choice) {
            case 0:
            case 1: {
                const auto v = fresh_num();
                std::string s = in + pick(rng_, kIntTypes) + " " + v;
                if (rng_.bernoulli(0.85)) s += " = " + num_expr(1);
                nums_.push_back(v);
                return s + ";\n";
            }
            case 2: {
                if (rng_.bernoulli(0.5)) {
                    const auto v = fresh_addr();
                    addrs_.push_back(v);
                    return in + "address " + v + " = " + addr_expr() + ";\n";
                }
                return in + "bool " + fresh_num() + " = " + bool_expr(1) + ";\n";
            }
            case 3: return in + num_var() + " = " + num_expr(1) + ";\n";
            case 4: return in + num_var() + " " + pick(rng_, kCompound) + " " + num_expr(1) + ";\n";
            case 5: {
                const auto m = pick(rng_, kMappings);
                const auto a = addr_expr();
                return in + m + "[" + a + "] = " + m + "[" + a + "]." + pick(rng_, kSafeMath) + "(" + num_expr(2) + ");\n";
            }
            case 6: {
                if (rng_.bernoulli(0.5)) return in + num_var() + (rng_.bernoulli(0.5) ? "++" : "--") + ";\n";
                return in + pick(rng_, kFlagMappings) + "[" + addr_expr() + "] = " + (rng_.bernoulli(0.5) ? "true" : "false") + ";\n";
            }
            case 7: {
                std::string s = in + "require(" + bool_expr(1);
                if (rng_.bernoulli(0.3)) s += ", \"" + pick(rng_, kStems) + " check\"";
                return s + ");\n";
            }
            case 8: {
                switch (rng_.index(4)) {
                    case 0: return in + addr_expr() + ".transfer(" + num_expr(2) + ");\n";
                    case 1: return in + "emit " + pick(rng_, kEvents) + "(" + addr_expr() + ", " + num_expr(2) + ");\n";
                    case 2: return in + "_update" + pick(rng_, kStems) + "(" + num_expr(2) + ", " + addr_expr() + ");\n";
                    default: return in + "delete " + pick(rng_, kMappings) + "[" + addr_expr() + "];\n";
                }
            }
            case 9:
            case 10: {
                std::string s = in + "if (" + bool_expr(1) + ") {\n";
                const int n = static_cast<int>(rng_.uniform_int(1, 2));
                for (int i = 0; i < n; ++i) s += statement(depth + 1, false);
                if (rng_.bernoulli(0.4)) {
                    s += in + "} else {\n";
                    s += statement(depth + 1, false);
                }
                return s + in + "}\n";
            }
            case 11: {
                const auto i = "i" + std::to_string(counter_++);
                std::string s = in + "for (uint " + i + " = 0; " + i + " < " + num_atom() + "; " + i + "++) {\n";
                nums_.push_back(i);
                const int n = static_cast<int>(rng_.uniform_int(1, 2));
                for (int k = 0; k < n; ++k) s += statement(depth + 1, false);
                nums_.pop_back();
                return s + in + "}\n";
            }
            default: {
                std::string s = in + "while (" + bool_expr(1) + ") {\n";
                s += statement(depth + 1, false);
                return s + in + "}\n";
            }
        }
    }

    Rng& rng_;
    std::vector<std::string> nums_;
    std::vector<std::string> addrs_;
    int counter_ = 0;
};

}  // namespace

std::string generate_function(Rng& rng, const std::string& name) { return Generator(rng).function(name); }

std::vector<std::string> generate_templates(std::size_t count, std::uint64_t seed) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(substream(seed, "template-" + std::to_string(i)));
        out.push_back(generate_function(rng, "t" + std::to_string(i)));
    }
    return out;
}

}  // namespace clonescope::corpus

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sofic {

// Index of a symbol within an Alphabet.
using Symbol = int;

// A word is a finite sequence of symbol indices (possibly empty). The
// char values are Symbol indices into the owning Alphabet, not text;
// use render_word/parse_word at the boundaries.
using Word = std::string;

// Ordered finite set of distinct symbol names. The ordering is the
// insertion order and defines the lexicographic order on words.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(const std::vector<std::string>& names) {
        for (const auto& n : names) add(n);
    }

    Symbol add(const std::string& name) {
        if (name.empty()) throw std::invalid_argument("empty symbol name");
        if (index_.count(name)) throw std::invalid_argument("duplicate symbol: " + name);
        if (names_.size() >= 255) throw std::length_error("alphabet too large");
        names_.push_back(name);
        index_[name] = static_cast<Symbol>(names_.size()) - 1;
        return index_[name];
    }

    Symbol add_or_get(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        return add(name);
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    Symbol index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown symbol: " + name);
        return it->second;
    }

    const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }

    int size() const { return static_cast<int>(names_.size()); }

    const std::vector<std::string>& names() const { return names_; }

    // True if every symbol name is a single character, so words can be
    // rendered without separators.
    bool single_char() const {
        for (const auto& n : names_)
            if (n.size() != 1) return false;
        return true;
    }

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, Symbol> index_;
};

inline std::string render_word(const Alphabet& a, const Word& w) {
    if (w.empty()) return "-";
    std::string out;
    bool dots = !a.single_char();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (dots && i > 0) out += '.';
        out += a.name(static_cast<Symbol>(static_cast<unsigned char>(w[i])));
    }
    return out;
}

// Parses a word token, extending the alphabet with unseen symbols. A
// token containing '.' is split on dots; otherwise every character is
// one symbol.
inline Word parse_word(Alphabet& a, const std::string& token) {
    Word w;
    if (token.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= token.size()) {
            std::size_t dot = token.find('.', pos);
            if (dot == std::string::npos) dot = token.size();
            std::string part = token.substr(pos, dot - pos);
            if (!part.empty()) w.push_back(static_cast<char>(a.add_or_get(part)));
            pos = dot + 1;
        }
    } else {
        for (char c : token) w.push_back(static_cast<char>(a.add_or_get(std::string(1, c))));
    }
    return w;
}

}  // namespace sofic

#pragma once

// Word text syntax: whitespace-separated letters with a '-' suffix for
// inverses, e.g. "D2t D2t- E12 E23-". The macro token
// "ehat(i,j;<ring expr>)" expands to the canonical synthesis word.

#include <sstream>
#include <string>

#include "ring_io.hpp"
#include "words.hpp"

namespace abels {

inline const char* letter_name(LetterKind k) {
    switch (k) {
        case LetterKind::D2t: return "D2t";
        case LetterKind::D2u: return "D2u";
        case LetterKind::D3t: return "D3t";
        case LetterKind::D3u: return "D3u";
        case LetterKind::E12: return "E12";
        case LetterKind::E13: return "E13";
        case LetterKind::E23: return "E23";
        case LetterKind::E24: return "E24";
        case LetterKind::E34: return "E34";
    }
    return "?";
}

inline std::string print_word(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << letter_name(w[i].kind);
        if (w[i].sign < 0) os << '-';
    }
    return os.str();
}

inline Word parse_word(std::string_view text, const EvalContext& ctx) {
    Word w;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        if (text.compare(i, 5, "ehat(") == 0) {
            std::size_t close = text.find(')', i);
            if (close == std::string_view::npos) throw ParseError("unterminated ehat(...)");
            std::string inner(text.substr(i + 5, close - i - 5));
            i = close + 1;
            std::size_t c1 = inner.find(',');
            std::size_t sc = inner.find(';');
            if (c1 == std::string::npos || sc == std::string::npos || c1 > sc)
                throw ParseError("ehat needs the form ehat(i,j;expr)");
            int a = std::stoi(inner.substr(0, c1));
            int b = std::stoi(inner.substr(c1 + 1, sc - c1 - 1));
            RingElem x = parse_ring(inner.substr(sc + 1), ctx.backend, ctx.p);
            Word e = synth_ehat(a, b, x).word;
            w.insert(w.end(), e.begin(), e.end());
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::string tok(text.substr(start, i - start));
        std::int8_t sign = +1;
        if (!tok.empty() && tok.back() == '-') {
            sign = -1;
            tok.pop_back();
        }
        bool found = false;
        for (int k = 0; k < kNumLetterKinds; ++k) {
            if (tok == letter_name(static_cast<LetterKind>(k))) {
                GenLetter l{static_cast<LetterKind>(k), sign};
                if (!ctx.letter_allowed(l.kind)) throw ParseError("letter '" + tok + "' not in this alphabet");
                w.push_back(l);
                found = true;
                break;
            }
        }
        if (!found) throw ParseError("unknown letter '" + tok + "'");
    }
    return w;
}

}  // namespace abels

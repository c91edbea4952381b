#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bannergen {

/// Decode one UTF-8 codepoint starting at s[i]; advances i. Invalid bytes
/// decode as U+FFFD and advance by one.
inline char32_t utf8_next(std::string_view s, std::size_t& i) {
    const unsigned char c0 = static_cast<unsigned char>(s[i]);
    if (c0 < 0x80) {
        ++i;
        return c0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((c0 & 0xe0) == 0xc0) {
        len = 2;
        cp = c0 & 0x1f;
    } else if ((c0 & 0xf0) == 0xe0) {
        len = 3;
        cp = c0 & 0x0f;
    } else if ((c0 & 0xf8) == 0xf0) {
        len = 4;
        cp = c0 & 0x07;
    } else {
        ++i;
        return 0xfffd;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xfffd;
    }
    for (int k = 1; k < len; ++k) {
        const unsigned char c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xc0) != 0x80) {
            ++i;
            return 0xfffd;
        }
        cp = (cp << 6) | (c & 0x3f);
    }
    i += len;
    return cp;
}

inline std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    std::size_t i = 0;
    while (i < s.size()) out.push_back(utf8_next(s, i));
    return out;
}

inline bool is_cjk(char32_t cp) {
    return (cp >= 0x4e00 && cp <= 0x9fff) ||    // unified ideographs
           (cp >= 0x3400 && cp <= 0x4dbf) ||    // extension A
           (cp >= 0xf900 && cp <= 0xfaff) ||    // compatibility ideographs
           (cp >= 0x3040 && cp <= 0x30ff) ||    // hiragana, katakana
           (cp >= 0xac00 && cp <= 0xd7af);      // hangul syllables
}

inline bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == 0x3000;
}

/// Tokenize for word counting and tf-idf: Latin-script runs split on
/// whitespace (lowercased, edge punctuation stripped), each CJK codepoint is
/// its own token. CJK copy has no delimiters, so characters count as words.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&]() {
        while (!current.empty() && std::ispunct(static_cast<unsigned char>(current.front())))
            current.erase(current.begin());
        while (!current.empty() && std::ispunct(static_cast<unsigned char>(current.back())))
            current.pop_back();
        if (!current.empty()) tokens.push_back(current);
        current.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const char32_t cp = utf8_next(text, i);
        if (is_space_cp(cp)) {
            flush();
        } else if (is_cjk(cp)) {
            flush();
            tokens.emplace_back(text.substr(start, i - start));
        } else {
            for (std::size_t k = start; k < i; ++k) {
                const char c = text[k];
                current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            }
        }
    }
    flush();
    return tokens;
}

inline int word_count(std::string_view text) {
    return static_cast<int>(tokenize(text).size());
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// Fractions of characters per class (whitespace excluded from the total).
struct CharClassHistogram {
    double upper = 0;
    double lower = 0;
    double digit = 0;
    double cjk = 0;
    double punct = 0;
    int total = 0;
};

inline CharClassHistogram char_class_histogram(std::string_view text) {
    CharClassHistogram h;
    int n_upper = 0, n_lower = 0, n_digit = 0, n_cjk = 0, n_punct = 0, n_total = 0;
    for (char32_t cp : utf8_decode(text)) {
        if (is_space_cp(cp)) continue;
        ++n_total;
        if (is_cjk(cp)) {
            ++n_cjk;
        } else if (cp < 128 && std::isupper(static_cast<int>(cp))) {
            ++n_upper;
        } else if (cp < 128 && std::islower(static_cast<int>(cp))) {
            ++n_lower;
        } else if (cp < 128 && std::isdigit(static_cast<int>(cp))) {
            ++n_digit;
        } else {
            ++n_punct;
        }
    }
    h.total = n_total;
    if (n_total > 0) {
        h.upper = double(n_upper) / n_total;
        h.lower = double(n_lower) / n_total;
        h.digit = double(n_digit) / n_total;
        h.cjk = double(n_cjk) / n_total;
        h.punct = double(n_punct) / n_total;
    }
    return h;
}

/// Codepoint count excluding whitespace (character budget of a text line).
inline int char_count(std::string_view text) {
    int n = 0;
    for (char32_t cp : utf8_decode(text))
        if (!is_space_cp(cp)) ++n;
    return n;
}

}  // namespace bannergen

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bannergen {

struct ModelIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace model_io {

/// Shortest round-trip decimal form; parsing and re-printing reproduces the
/// byte sequence, which keeps model files round-trip exact.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        // try shorter representations
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[64];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            double b2 = 0;
            std::sscanf(shorter, "%lf", &b2);
            if (b2 == v) return shorter;
        }
    }
    return buf;
}

class Writer {
public:
    void line(const std::string& s) { out_ << s << '\n'; }

    template <typename... Args>
    void fields(const Args&... args) {
        std::ostringstream os;
        bool first = true;
        ((os << (first ? "" : " ") << render(args), first = false), ...);
        out_ << os.str() << '\n';
    }

    std::string str() const { return out_.str(); }

    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ModelIoError("cannot write " + path);
        const std::string s = out_.str();
        f.write(s.data(), static_cast<std::streamsize>(s.size()));
    }

private:
    static std::string render(double v) { return fmt_double(v); }
    static std::string render(float v) { return fmt_double(v); }
    static std::string render(int v) { return std::to_string(v); }
    static std::string render(std::size_t v) { return std::to_string(v); }
    static std::string render(long v) { return std::to_string(v); }
    static std::string render(long long v) { return std::to_string(v); }
    static std::string render(unsigned long long v) { return std::to_string(v); }
    static std::string render(const std::string& v) { return v; }
    static std::string render(const char* v) { return v; }
    std::ostringstream out_;
};

class Reader {
public:
    explicit Reader(std::string text) : in_(std::move(text)) {}

    static Reader from_file(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw ModelIoError("cannot read " + path);
        std::ostringstream os;
        os << f.rdbuf();
        return Reader(os.str());
    }

    std::string line() {
        std::string s;
        if (!std::getline(in_, s)) throw ModelIoError("unexpected end of model file");
        return s;
    }

    std::vector<std::string> tokens() {
        std::istringstream ls(line());
        std::vector<std::string> out;
        std::string t;
        while (ls >> t) out.push_back(t);
        return out;
    }

    /// Read a line of the form "<tag> v0 v1 ...", checking the tag.
    std::vector<std::string> tagged(const std::string& tag) {
        auto ts = tokens();
        if (ts.empty() || ts[0] != tag)
            throw ModelIoError("expected '" + tag + "' line, got '" +
                               (ts.empty() ? std::string("<empty>") : ts[0]) + "'");
        ts.erase(ts.begin());
        return ts;
    }

    bool eof() {
        return in_.peek() == std::char_traits<char>::eof();
    }

private:
    std::istringstream in_;
};

inline double parse_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ModelIoError("bad float: " + s);
    }
}

inline int parse_int(const std::string& s) {
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw ModelIoError("bad int: " + s);
    }
}

}  // namespace model_io
}  // namespace bannergen

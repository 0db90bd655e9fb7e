#include "classix/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "classix/error.hpp"

namespace classix {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view field, std::size_t line) {
    field = trim(field);
    if (field.empty()) throw ParseError(line, "empty field");
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line, "cannot parse '" + std::string(field) + "' as a number");
    }
    return v;
}

std::int64_t parse_int(std::string_view field, std::size_t line) {
    field = trim(field);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line, "cannot parse '" + std::string(field) + "' as an integer");
    }
    return v;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

DenseDataset read_dense_csv(std::istream& in, const DenseCsvOptions& options) {
    std::vector<double> values;
    std::size_t d = 0;
    std::size_t n = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && options.header) continue;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        std::size_t count = 0;
        while (true) {
            const auto comma = view.find(',');
            values.push_back(parse_double(view.substr(0, comma), lineno));
            ++count;
            if (comma == std::string_view::npos) break;
            view.remove_prefix(comma + 1);
        }
        if (n == 0) {
            d = count;
        } else if (count != d) {
            throw ParseError(lineno, "expected " + std::to_string(d) + " columns, found " +
                                         std::to_string(count));
        }
        ++n;
    }
    if (n == 0) throw InvalidInput("dense CSV contains no data rows");
    return DenseDataset(n, d, std::move(values));
}

DenseDataset load_dense_csv(const std::filesystem::path& path, const DenseCsvOptions& options) {
    auto in = open_in(path);
    return read_dense_csv(in, options);
}

void save_dense_csv(const std::filesystem::path& path, const DenseDataset& data) {
    auto out = open_out(path);
    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto r = data.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r[k]);
            if (k) out << ',';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
    finish(out, path);
}

FingerprintSet read_fingerprints(std::istream& in, std::optional<std::size_t> dims) {
    std::vector<std::uint64_t> words;
    std::optional<std::size_t> d = dims;
    std::size_t n = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        const bool hex = view.size() >= 2 && view[0] == '0' && (view[1] == 'x' || view[1] == 'X');
        if (hex) {
            if (!dims) throw ParseError(lineno, "hex fingerprints require the dimension (--dims)");
            view.remove_prefix(2);
            const std::size_t nibbles = (*d + 3) / 4;
            if (view.size() != nibbles) {
                throw ParseError(lineno, "dimension mismatch: expected " + std::to_string(nibbles) +
                                             " hex digits for d = " + std::to_string(*d) +
                                             ", found " + std::to_string(view.size()));
            }
        } else {
            if (!d) d = view.size();
            if (view.size() != *d) {
                throw ParseError(lineno, "dimension mismatch: expected " + std::to_string(*d) +
                                             " bits, found " + std::to_string(view.size()));
            }
        }
        const std::size_t wpr = FingerprintSet::words_for(*d);
        const std::size_t base = words.size();
        words.resize(base + wpr, 0);
        auto set_bit = [&](std::size_t b) {
            words[base + b / FingerprintSet::kWordBits] |= std::uint64_t{1}
                                                           << (b % FingerprintSet::kWordBits);
        };
        if (hex) {
            for (std::size_t c = 0; c < view.size(); ++c) {
                const int v = hex_value(view[c]);
                if (v < 0) throw ParseError(lineno, "invalid hex digit");
                for (int t = 0; t < 4; ++t) {
                    if (!((v >> (3 - t)) & 1)) continue;
                    const std::size_t b = c * 4 + static_cast<std::size_t>(t);
                    if (b >= *d) throw ParseError(lineno, "hex value sets bits beyond dimension");
                    set_bit(b);
                }
            }
        } else {
            for (std::size_t b = 0; b < view.size(); ++b) {
                if (view[b] == '1') {
                    set_bit(b);
                } else if (view[b] != '0') {
                    throw ParseError(lineno, "invalid character '" + std::string(1, view[b]) +
                                                 "' in fingerprint");
                }
            }
        }
        ++n;
    }
    if (n == 0) throw InvalidInput("fingerprint file contains no rows");
    return FingerprintSet(n, *d, std::move(words));
}

FingerprintSet load_fingerprints(const std::filesystem::path& path,
                                 std::optional<std::size_t> dims) {
    auto in = open_in(path);
    return read_fingerprints(in, dims);
}

void write_fingerprints(std::ostream& out, const FingerprintSet& fps) {
    for (std::size_t i = 0; i < fps.size(); ++i) out << fps.row_string(i) << '\n';
}

void save_fingerprints(const std::filesystem::path& path, const FingerprintSet& fps) {
    auto out = open_out(path);
    write_fingerprints(out, fps);
    finish(out, path);
}

void write_labels(std::ostream& out, const std::vector<std::int64_t>& labels) {
    out << "index,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

void save_labels(const std::filesystem::path& path, const std::vector<std::int64_t>& labels) {
    auto out = open_out(path);
    write_labels(out, labels);
    finish(out, path);
}

std::vector<std::int64_t> read_labels(std::istream& in) {
    std::vector<std::int64_t> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        if (lineno == 1 && view == "index,label") continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos) throw ParseError(lineno, "expected 'index,label'");
        const std::int64_t index = parse_int(view.substr(0, comma), lineno);
        if (index != static_cast<std::int64_t>(labels.size())) {
            throw ParseError(lineno, "expected index " + std::to_string(labels.size()));
        }
        labels.push_back(parse_int(view.substr(comma + 1), lineno));
    }
    return labels;
}

std::vector<std::int64_t> load_labels(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_labels(in);
}

std::string file_checksum(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        const auto got = in.gcount();
        for (std::streamsize k = 0; k < got; ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 0x100000001b3ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace classix

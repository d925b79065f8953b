#include "bohm/cpdb.hpp"

#include "bohm/errors.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

namespace bohm {

namespace {

constexpr std::string_view kHeaderPrefix = "# bohm-cpdb v1; family=";

} // namespace

std::string coefficient_key(std::span<const GaussInt> coeffs) {
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) out += ',';
        out += to_string(coeffs[k]);
    }
    return out;
}

bool canonical_less(const CpdbRecord& a, const CpdbRecord& b) {
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
        int c = compare(a.coeffs[k], b.coeffs[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

BigInt Cpdb::total_matrices() const {
    BigInt total = 0;
    for (const auto& [key, rec] : records_) total += rec.matrix_count;
    return total;
}

const BigInt& Cpdb::insert(const CharPoly& p, const BigInt& count) {
    return insert(std::vector<GaussInt>(p.coeffs().begin(), p.coeffs().end()), count);
}

const BigInt& Cpdb::insert(std::vector<GaussInt> coeffs, const BigInt& count) {
    if (coeffs.empty() || coeffs.back() != GaussInt(1)) throw InvalidArgument("cpdb records must be monic");
    if (count < 1) throw InvalidArgument("cpdb insert count must be >= 1");
    std::string key = coefficient_key(coeffs);
    auto it = records_.find(key);
    if (it == records_.end()) {
        it = records_.emplace(std::move(key), CpdbRecord{std::move(coeffs), count}).first;
    } else {
        it->second.matrix_count += count;
    }
    return it->second.matrix_count;
}

void Cpdb::merge(const Cpdb& other) {
    if (!family_.empty() && !other.family_.empty() && family_ != other.family_)
        throw InvalidArgument("cannot merge databases of different families: '" + family_ + "' vs '" + other.family_ + "'");
    if (family_.empty()) family_ = other.family_;
    for (const auto& [key, rec] : other.records_) {
        auto it = records_.find(key);
        if (it == records_.end()) records_.emplace(key, rec);
        else it->second.matrix_count += rec.matrix_count;
    }
}

const CpdbRecord* Cpdb::find(const CharPoly& p) const {
    auto it = records_.find(coefficient_key(p.coeffs()));
    return it == records_.end() ? nullptr : &it->second;
}

std::vector<const CpdbRecord*> Cpdb::sorted() const {
    std::vector<const CpdbRecord*> out;
    out.reserve(records_.size());
    for (const auto& [key, rec] : records_) out.push_back(&rec);
    std::sort(out.begin(), out.end(), [](const CpdbRecord* a, const CpdbRecord* b) { return canonical_less(*a, *b); });
    return out;
}

std::pair<std::size_t, BigInt> Cpdb::query(const std::function<bool(const CharPoly&)>& pred) const {
    std::size_t polys = 0;
    BigInt matrices = 0;
    for (const auto& [key, rec] : records_) {
        if (pred(rec.poly())) {
            ++polys;
            matrices += rec.matrix_count;
        }
    }
    return {polys, matrices};
}

void Cpdb::write(std::ostream& os) const {
    os << kHeaderPrefix << family_ << '\n';
    for (const CpdbRecord* rec : sorted())
        os << rec->degree() << ';' << coefficient_key(rec->coeffs) << ';' << rec->matrix_count.get_str() << '\n';
}

void Cpdb::write_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write(os);
    if (!os) throw std::runtime_error("write failed for " + path);
}

Cpdb Cpdb::read(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind(kHeaderPrefix, 0) != 0) throw ParseError("missing bohm-cpdb v1 header");
    Cpdb db(line.substr(kHeaderPrefix.size()));
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto bad = [&](const std::string& why) {
            return ParseError("cpdb line " + std::to_string(lineno) + ": " + why);
        };
        auto s1 = line.find(';');
        auto s2 = line.find(';', s1 == std::string::npos ? s1 : s1 + 1);
        if (s1 == std::string::npos || s2 == std::string::npos) throw bad("expected n;coeffs;count");
        int n = 0;
        try {
            n = std::stoi(line.substr(0, s1));
        } catch (const std::exception&) {
            throw bad("bad degree");
        }
        std::vector<GaussInt> coeffs;
        std::string field = line.substr(s1 + 1, s2 - s1 - 1);
        std::size_t start = 0;
        while (start <= field.size()) {
            auto comma = field.find(',', start);
            if (comma == std::string::npos) comma = field.size();
            coeffs.push_back(parse_gauss_int(std::string_view(field).substr(start, comma - start)));
            start = comma + 1;
        }
        if (static_cast<int>(coeffs.size()) != n + 1) throw bad("degree does not match coefficient count");
        BigInt count;
        if (count.set_str(line.substr(s2 + 1), 10) != 0) throw bad("bad count");
        db.insert(std::move(coeffs), count);
    }
    return db;
}

Cpdb Cpdb::read_file(const std::string& path) {
    // gzread passes uncompressed files through unchanged.
    std::unique_ptr<gzFile_s, int (*)(gzFile)> f(gzopen(path.c_str(), "rb"), gzclose);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string data;
    char buf[1 << 16];
    int got;
    while ((got = gzread(f.get(), buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(got));
    if (got < 0) throw std::runtime_error("read failed for " + path);
    std::istringstream is(data);
    return read(is);
}

bool operator==(const Cpdb& a, const Cpdb& b) {
    if (a.family_ != b.family_ || a.records_.size() != b.records_.size()) return false;
    for (const auto& [key, rec] : a.records_) {
        auto it = b.records_.find(key);
        if (it == b.records_.end() || it->second.matrix_count != rec.matrix_count) return false;
    }
    return true;
}

Cpdb merge(const Cpdb& a, const Cpdb& b) {
    Cpdb out = a;
    out.merge(b);
    return out;
}

} // namespace bohm

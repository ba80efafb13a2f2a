#include "pcong/report.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace pcong {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::TrivialPass: return "TRIVIAL-PASS";
    case Status::Empty: return "EMPTY";
    }
    return "?";
}

Filter Filter::residue_in(std::int64_t modulus, std::vector<std::int64_t> residues)
{
    Filter f;
    f.kind = Kind::ResidueIn;
    f.modulus = modulus;
    std::sort(residues.begin(), residues.end());
    f.residues = std::move(residues);
    return f;
}

Filter Filter::coprime_affine(std::int64_t scale, std::int64_t shift, std::int64_t coprime_to)
{
    Filter f;
    f.kind = Kind::CoprimeAffine;
    f.scale = scale;
    f.shift = shift;
    f.coprime_to = coprime_to;
    return f;
}

bool Filter::admits(std::int64_t n) const
{
    switch (kind) {
    case Kind::None: return true;
    case Kind::ResidueIn: {
        const std::int64_t r = ((n % modulus) + modulus) % modulus;
        return std::binary_search(residues.begin(), residues.end(), r);
    }
    case Kind::CoprimeAffine: return std::gcd(scale * n + shift, coprime_to) == 1;
    }
    return false;
}

std::string Filter::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::None: return "";
    case Kind::ResidueIn:
        os << "n mod " << modulus << " in {";
        for (std::size_t i = 0; i < residues.size(); ++i) os << (i ? "," : "") << residues[i];
        os << "}";
        break;
    case Kind::CoprimeAffine: os << "gcd(" << scale << "n+" << shift << ", " << coprime_to << ") = 1"; break;
    }
    return os.str();
}

void VerificationReport::finalize()
{
    const auto by_n = [](const Observation& a, const Observation& b) { return a.n < b.n; };
    std::sort(counterexamples.begin(), counterexamples.end(), by_n);
    std::sort(residues.begin(), residues.end(), by_n);
    std::sort(skipped.begin(), skipped.end());
    if (status == Status::TrivialPass) return;
    if (!counterexamples.empty())
        status = Status::Fail;
    else
        status = checked == 0 ? Status::Empty : Status::Pass;
}

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kListedSkips = 64;

ordered_json observation_json(const Observation& o)
{
    ordered_json j;
    j["n"] = o.n;
    j["index"] = o.index;
    j["residue"] = o.residue;
    return j;
}

ordered_json report_json(const VerificationReport& r, bool timing)
{
    ordered_json j;
    j["provenance"] = r.claim.provenance;
    j["statement"] = r.claim.statement;
    j["function"] = r.claim.function;
    j["scale"] = r.claim.scale;
    j["offset"] = r.claim.offset;
    j["modulus"] = r.claim.modulus;
    j["filter"] = r.claim.filter.describe();
    j["conjectural"] = r.claim.conjectural;
    j["status"] = to_string(r.status);
    j["n_from"] = r.n_from;
    j["n_to"] = r.n_to;
    j["checked"] = r.checked;
    j["skipped_count"] = r.skipped.size();
    // Long skip lists are implied by the filter; short ones are spelled out.
    if (r.skipped.size() <= kListedSkips) j["skipped"] = r.skipped;
    auto& ce = j["counterexamples"] = ordered_json::array();
    for (const auto& o : r.counterexamples) ce.push_back(observation_json(o));
    if (!r.residues.empty()) {
        auto& rs = j["residues"] = ordered_json::array();
        for (const auto& o : r.residues) rs.push_back(observation_json(o));
    }
    j["truncation"] = r.truncation;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (timing) j["elapsed_seconds"] = r.elapsed_seconds;
    return j;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string render(const std::vector<VerificationReport>& reports, Format format, bool timing)
{
    if (format == Format::Json) {
        ordered_json doc;
        auto& arr = doc["reports"] = ordered_json::array();
        bool all = true;
        for (const auto& r : reports) {
            arr.push_back(report_json(r, timing));
            all = all && (r.passed() || r.claim.conjectural);
        }
        doc["all_passed"] = all;
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "provenance,function,scale,offset,modulus,filter,status,n_from,n_to,checked,skipped,counterexamples,"
          "first_counterexample_n,first_counterexample_residue";
    if (timing) os << ",elapsed_seconds";
    os << "\n";
    for (const auto& r : reports) {
        os << csv_field(r.claim.provenance) << ',' << csv_field(r.claim.function) << ',' << r.claim.scale << ','
           << r.claim.offset << ',' << r.claim.modulus << ',' << csv_field(r.claim.filter.describe()) << ','
           << to_string(r.status) << ',' << r.n_from << ',' << r.n_to << ',' << r.checked << ','
           << r.skipped.size() << ',' << r.counterexamples.size() << ',';
        if (!r.counterexamples.empty())
            os << r.counterexamples.front().n << ',' << r.counterexamples.front().residue;
        else
            os << ',';
        if (timing) os << ',' << r.elapsed_seconds;
        os << "\n";
    }
    return os.str();
}

} // namespace pcong

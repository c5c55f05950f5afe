#include <rainbow/io.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace rainbow {

namespace {

auto require_int(const nlohmann::json & v, const std::string & what) -> int
{
    if (! v.is_number_integer())
        throw ParseError(what + " must be an integer");
    auto value = v.get<long long>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
        throw ParseError(what + " out of range");
    return static_cast<int>(value);
}

} // namespace

auto instance_from_json(const nlohmann::json & doc) -> FamilySystem
{
    if (! doc.is_object())
        throw ParseError("instance must be a JSON object");
    static const std::set<std::string> known{"format", "r", "side_sizes", "families"};
    for (const auto & [key, _] : doc.items())
        if (! known.contains(key))
            throw ParseError("unknown field '" + key + "'");
    for (const auto & key : known)
        if (! doc.contains(key))
            throw ParseError("missing field '" + key + "'");
    if (! doc["format"].is_string() || doc["format"].get<std::string>() != instance_format)
        throw ParseError("format must be \"" + std::string(instance_format) + "\"");

    const int r = require_int(doc["r"], "r");
    if (r < 2)
        throw ParseError("r must be at least 2");

    FamilySystem sys;
    const auto & sides = doc["side_sizes"];
    if (! sides.is_array() || static_cast<int>(sides.size()) != r)
        throw ParseError("side_sizes must be an array of length r");
    for (const auto & s : sides)
        sys.universe.side_sizes.push_back(require_int(s, "side size"));

    const auto & families = doc["families"];
    if (! families.is_array())
        throw ParseError("families must be an array");
    for (const auto & fam : families) {
        if (! fam.is_array())
            throw ParseError("each family must be an array of edges");
        Family family;
        for (const auto & edge : fam) {
            if (! edge.is_array())
                throw ParseError("each edge must be an array of coordinates");
            Edge e;
            for (const auto & c : edge)
                e.coords.push_back(require_int(c, "edge coordinate"));
            family.push_back(std::move(e));
        }
        sys.families.push_back(std::move(family));
    }

    auto report = validate_instance(sys);
    if (! report.valid())
        throw ParseError(report.violations.front().message);
    return sys;
}

auto parse_instance(std::string_view text) -> FamilySystem
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

auto serialize_instance(const FamilySystem & sys) -> std::string
{
    std::ostringstream out;
    out << "{\"format\":\"" << instance_format << "\",\"r\":" << sys.r() << ",\"side_sizes\":[";
    for (int j = 0; j < sys.r(); ++j)
        out << (j ? "," : "") << sys.universe.side_sizes[j];
    out << "],\"families\":[";
    for (int i = 0; i < sys.m(); ++i) {
        out << (i ? ",\n  [" : "\n  [");
        const auto & fam = sys.families[i];
        for (std::size_t x = 0; x < fam.size(); ++x) {
            out << (x ? ",[" : "[");
            for (std::size_t j = 0; j < fam[x].coords.size(); ++j)
                out << (j ? "," : "") << fam[x].coords[j];
            out << ']';
        }
        out << ']';
    }
    out << (sys.m() ? "\n]}\n" : "]}\n");
    return out.str();
}

auto read_text_file(const std::filesystem::path & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path & path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (! out)
        throw ParseError("cannot write " + path.string());
    out << text;
    if (! out)
        throw ParseError("write failed for " + path.string());
}

auto read_instance(const std::filesystem::path & path) -> FamilySystem
{
    return parse_instance(read_text_file(path));
}

void write_instance(const std::filesystem::path & path, const FamilySystem & sys)
{
    write_text_file(path, serialize_instance(sys));
}

} // namespace rainbow

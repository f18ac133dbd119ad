#include "cuspcount/report.hpp"

#include <fstream>

namespace cuspcount {

namespace {

const Int kJsonNumberMax = (Int(1) << 53) - 1;

} // namespace

Json json_int(const Int& value) {
    if (value >= -kJsonNumberMax && value <= kJsonNumberMax)
        return Json(value.convert_to<std::int64_t>());
    return Json(value.str());
}

Int parse_json_int(const Json& value) {
    if (value.is_number_unsigned())
        return Int(value.get<std::uint64_t>());
    if (value.is_number_integer())
        return Int(value.get<std::int64_t>());
    if (value.is_string())
        return Int(value.get<std::string>());
    throw InvalidArgument("expected an integer or a decimal string, got " + value.dump());
}

Json json_rat(const Rat& value) {
    return Json{{"den", json_int(boost::multiprecision::denominator(value))},
                {"num", json_int(boost::multiprecision::numerator(value))}};
}

Rat parse_json_rat(const Json& value) {
    if (!value.is_object() || !value.contains("num") || !value.contains("den"))
        throw InvalidArgument("expected {num, den}, got " + value.dump());
    const Int den = parse_json_int(value.at("den"));
    if (den == 0)
        throw InvalidArgument("rational with zero denominator");
    return Rat(parse_json_int(value.at("num")), den);
}

Json json_endoclass(const EndoclassRecord& endo) {
    return Json{{"deg", endo.deg}, {"level", json_rat(endo.level)}, {"res_deg", endo.res_deg}};
}

std::vector<EndoclassRecord> parse_endoclass_list(const Json& doc) {
    if (!doc.is_array())
        throw InvalidArgument("endoclass file: top level must be an array");
    std::vector<EndoclassRecord> records;
    for (const Json& item : doc) {
        if (!item.is_object())
            throw InvalidArgument("endoclass file: entries must be objects");
        for (const auto& [key, unused] : item.items()) {
            (void)unused;
            if (key != "deg" && key != "res_deg" && key != "level_num" && key != "level_den")
                throw InvalidArgument("endoclass file: unknown key \"" + key + "\"");
        }
        for (const char* key : {"deg", "res_deg", "level_num", "level_den"})
            if (!item.contains(key))
                throw InvalidArgument(std::string("endoclass file: missing key \"") + key + "\"");
        EndoclassRecord rec;
        rec.deg = item.at("deg").get<unsigned>();
        rec.res_deg = item.at("res_deg").get<unsigned>();
        const Int num = parse_json_int(item.at("level_num"));
        const Int den = parse_json_int(item.at("level_den"));
        if (rec.deg == 0 || rec.res_deg == 0 || rec.deg % rec.res_deg != 0)
            throw InvalidArgument("endoclass file: res_deg must divide deg");
        if (num < 0 || den < 1)
            throw InvalidArgument("endoclass file: level must be a nonnegative fraction");
        rec.level = Rat(num, den);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EndoclassRecord> load_endoclass_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open endoclass file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& err) {
        throw InvalidArgument("endoclass file " + path + ": " + err.what());
    }
    return parse_endoclass_list(doc);
}

std::string dump_report(const Json& doc) { return doc.dump(2) + "\n"; }

} // namespace cuspcount

#include "endocalc/caps.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

#include "endocalc/errors.hpp"

namespace endocalc {

Caps parse_caps(const char* spec) {
    Caps c;
    if (!spec || !*spec) return c;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw EndocalcError("malformed ENDOCALC_CAPS entry: " + item);
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        try {
            if (key == "torsion")
                c.torsion_order = Int(val);
            else if (key == "subgroups")
                c.subgroup_count = std::stoll(val);
            else if (key == "elements")
                c.slice_elements = std::stoll(val);
            else if (key == "word_bound")
                c.word_bound = std::stoi(val);
            else
                throw EndocalcError("unknown ENDOCALC_CAPS key: " + key);
        } catch (const std::invalid_argument&) {
            throw EndocalcError("malformed ENDOCALC_CAPS value: " + item);
        }
    }
    return c;
}

const Caps& caps() {
    static const Caps c = parse_caps(std::getenv("ENDOCALC_CAPS"));
    return c;
}

}  // namespace endocalc

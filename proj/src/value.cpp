#include "ciflin/value.hpp"

namespace ciflin {

std::string Value::to_string() const {
    switch (kind()) {
    case Kind::Int:
        return std::to_string(as_int());
    case Kind::Bool:
        return as_bool() ? "true" : "false";
    case Kind::List: {
        std::string out = "[";
        const auto& xs = as_list();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i > 0) out += ", ";
            out += xs[i].to_string();
        }
        return out + "]";
    }
    case Kind::Loc:
        return as_loc();
    }
    return "?";
}

} // namespace ciflin

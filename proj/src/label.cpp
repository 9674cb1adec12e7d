#include "ila/label.hpp"

namespace ila {

std::string Label::str() const {
    std::string s = tilde ? "~" + base : base;
    if (decoration == Decoration::Prime) s += "'";
    if (decoration == Decoration::DoublePrime) s += "''";
    return s;
}

std::optional<Label> Label::parse(const std::string& text) {
    std::string s = text;
    Label out;
    if (!s.empty() && s.front() == '~') {
        out.tilde = true;
        s.erase(s.begin());
    }
    if (s.size() >= 2 && s.ends_with("''")) {
        out.decoration = Decoration::DoublePrime;
        s.resize(s.size() - 2);
    } else if (!s.empty() && s.back() == '\'') {
        out.decoration = Decoration::Prime;
        s.pop_back();
    }
    if (s.empty() || s.find('~') != std::string::npos || s.find('\'') != std::string::npos)
        return std::nullopt;
    out.base = std::move(s);
    return out;
}

LabelList primed(const LabelList& plain) {
    LabelList out;
    out.reserve(plain.size());
    for (const Label& l : plain) out.push_back(l.with_decoration(Decoration::Prime));
    return out;
}

LabelList doubleprimed(const LabelList& plain) {
    LabelList out;
    out.reserve(plain.size());
    for (const Label& l : plain) out.push_back(l.with_decoration(Decoration::DoublePrime));
    return out;
}

LabelList concat(const LabelList& a, const LabelList& b) {
    LabelList out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace ila

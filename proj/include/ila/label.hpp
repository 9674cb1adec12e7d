#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace ila {

// Which copy of an index an axis refers to: e (plain), e' (voltage copy),
// e'' (current copy).
enum class Decoration { Plain, Prime, DoublePrime };

// One coordinate axis of an indexed space.  The tilde flag marks the disjoint
// duplicate universe used when a network is paired with a copy of itself
// (adjoint terminations), so ~e' and e' are distinct columns with a common base.
struct Label {
    std::string base;
    Decoration decoration = Decoration::Plain;
    bool tilde = false;

    Label() = default;
    Label(std::string b, Decoration d = Decoration::Plain, bool t = false)
        : base(std::move(b)), decoration(d), tilde(t) {}

    Label with_decoration(Decoration d) const { return Label(base, d, tilde); }
    Label with_tilde(bool t) const { return Label(base, decoration, t); }

    // Column order everywhere: lexicographic on (base, decoration, tilde).
    friend auto operator<=>(const Label& a, const Label& b) {
        if (auto c = a.base <=> b.base; c != 0) return c;
        if (auto c = a.decoration <=> b.decoration; c != 0) return c;
        return a.tilde <=> b.tilde;
    }
    friend bool operator==(const Label& a, const Label& b) = default;

    std::string str() const;
    static std::optional<Label> parse(const std::string& text);
};

using LabelList = std::vector<Label>;

// Convenience builders for the decorated copies of a set of plain edge labels.
LabelList primed(const LabelList& plain);
LabelList doubleprimed(const LabelList& plain);
LabelList concat(const LabelList& a, const LabelList& b);

}  // namespace ila

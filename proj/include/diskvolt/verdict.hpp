#pragma once

namespace diskvolt {

// Criterion outcome. Inconclusive is a value, not an error: verdicts close
// to a critical exponent land in the dead band instead of guessing.
enum class Ternary { Holds, Fails, Inconclusive };

inline const char* ternary_name(Ternary t) {
    switch (t) {
        case Ternary::Holds: return "holds";
        case Ternary::Fails: return "fails";
        case Ternary::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline Ternary ternary_and(Ternary a, Ternary b) {
    if (a == Ternary::Fails || b == Ternary::Fails) return Ternary::Fails;
    if (a == Ternary::Inconclusive || b == Ternary::Inconclusive) return Ternary::Inconclusive;
    return Ternary::Holds;
}

}  // namespace diskvolt

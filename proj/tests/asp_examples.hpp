#pragma once

// Fact sets for K7 = {x && y, x || y, !x}, transcribed from the worked ASP
// examples with the constant scheme applied: alpha_i -> f_<i-1>,
// phi_{i,1} -> f_<i-1>_l, phi_{i,2} -> f_<i-1>_r, phi_3 -> f_2_n, x -> a_x.

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "incmeter/asp.hpp"

namespace asp_examples {

using incmeter::Measure;

inline std::set<std::string> k7_facts(Measure m) {
    const std::vector<std::string> members{"kbMember(f_0).", "kbMember(f_1).", "kbMember(f_2)."};
    const std::vector<std::string> indexed{"kbMember(f_0,0).", "kbMember(f_1,1).", "kbMember(f_2,2)."};
    const std::vector<std::string> atoms{"atom(a_x).", "atom(a_y)."};
    const std::vector<std::string> structure{"conjunction(f_0,f_0_l,f_0_r).", "disjunction(f_1,f_1_l,f_1_r).",
                                             "negation(f_2,f_2_n)."};
    const std::vector<std::string> leaves{"formulaIsAtom(f_0_l,a_x).", "formulaIsAtom(f_0_r,a_y).",
                                          "formulaIsAtom(f_1_l,a_x).", "formulaIsAtom(f_1_r,a_y).",
                                          "formulaIsAtom(f_2_n,a_x)."};
    const std::vector<std::string> occs{"formulaIsAtomOcc(f_0_l,a_x,1).", "formulaIsAtomOcc(f_0_r,a_y,1).",
                                        "formulaIsAtomOcc(f_1_l,a_x,2).", "formulaIsAtomOcc(f_1_r,a_y,2).",
                                        "formulaIsAtomOcc(f_2_n,a_x,3)."};
    std::set<std::string> out;
    auto add = [&](const std::vector<std::string>& v) { out.insert(v.begin(), v.end()); };
    switch (m) {
        case Measure::Contension:
        case Measure::HitDistance:
            add(members);
            add(atoms);
            add(structure);
            add(leaves);
            break;
        case Measure::Forgetting:
            add(members);
            add(structure);
            add(occs);
            break;
        case Measure::HittingSet:
            add(members);
            add(atoms);
            add(structure);
            add(leaves);
            out.insert("interpretation(1..3).");
            out.insert("1{interpretationActive(X) : interpretation(X)}3.");
            break;
        case Measure::MaxDistance:
        case Measure::SumDistance:
            add(indexed);
            add(atoms);
            add(structure);
            add(leaves);
            out.insert("interpretation(0..3).");
            out.insert(m == Measure::MaxDistance ? "dMax(X) :- X = #max{Y : d(I,3,Y), interpretation(I)}, X >= 0."
                                                 : "dSum(X) :- X = #sum{Y,I : d(I,3,Y), interpretation(I)}, X >= 0.");
            break;
    }
    return out;
}

inline std::set<std::string> lines_of(const std::string& text) {
    std::set<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.insert(line);
    return out;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace asp_examples

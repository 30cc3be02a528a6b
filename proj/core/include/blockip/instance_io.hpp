#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "blockip/nfold.hpp"
#include "blockip/reductions.hpp"
#include "blockip/twostage.hpp"

namespace blockip {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

using Instance = std::variant<TwoStageProgram, NFoldProgram, FourBlockProgram>;

// Line-oriented text format: TWOSTAGE/NFOLD/FOURBLOCK header, dimension
// lines, keyword-introduced matrix/vector blocks, BRICK [xM] .. ENDBRICK
// sections, END terminator, '#' comments.
Instance parse_instance(const std::string& text);

std::string format_instance(const TwoStageProgram& P);
std::string format_instance(const NFoldProgram& P);
std::string format_instance(const FourBlockProgram& P);
std::string format_instance(const Instance& inst);

// One line of space-separated entries, the grammar's vector syntax.
std::string format_vector(const IntVec& v);

}  // namespace blockip

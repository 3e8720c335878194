#pragma once

// The 27 lines of the Clebsch cubic in the affine chart, one row per line:
// two implicit forms in y1, y2, y3 and a parametrization in s. Written with
// c = sqrt(2) and ac = sqrt(10); expand() substitutes them.

#include <array>
#include <string>

namespace cubic::testing {

struct TableRow {
  const char* implicit[2];
  const char* param[3];
};

inline const std::array<TableRow, 27> kClebschTable = {{
    {{"y3-1", "y2"}, {"s", "0", "1"}},
    {{"y3-1", "y2-2/c"}, {"s", "2/c", "1"}},
    {{"y3-1", "y2+2/c"}, {"s", "-2/c", "1"}},
    {{"y2-y3/c+1/c", "y1-y3/c-1/c"}, {"s/c+1/c", "s/c-1/c", "s"}},
    {{"y2-y3/c-1/c", "y1-y3/c-3/c"}, {"s/c+3/c", "s/c+1/c", "s"}},
    {{"y2-y3/c+3/c", "y1-y3/c+1/c"}, {"s/c-1/c", "s/c-3/c", "s"}},
    {{"y2-y3/c+1/c", "y1+y3/c+1/c"}, {"-s/c-1/c", "s/c-1/c", "s"}},
    {{"y2-y3/c-1/c", "y1+y3/c+3/c"}, {"-s/c-3/c", "s/c+1/c", "s"}},
    {{"y2-y3/c+3/c", "y1+y3/c-1/c"}, {"-s/c+1/c", "s/c-3/c", "s"}},
    {{"y2+y3/c+1/c", "y1+3*y3/c+1/c"}, {"-3*s/c-1/c", "-s/c-1/c", "s"}},
    {{"y2-3*y3/c+1/c", "y1-y3/c+1/c"}, {"s/c-1/c", "3*s/c-1/c", "s"}},
    {{"y2+y3/c+1/c", "y1-3*y3/c-1/c"}, {"3*s/c+1/c", "-s/c-1/c", "s"}},
    {{"y2-3*y3/c+1/c", "y1+y3/c-1/c"}, {"-s/c+1/c", "3*s/c-1/c", "s"}},
    {{"y2", "y1-y3/c+1/c"}, {"s/c-1/c", "0", "s"}},
    {{"y2", "y1+y3/c-1/c"}, {"-s/c+1/c", "0", "s"}},
    {{"y2-y3/(ac+2*c)+5/ac", "y1+(3/2*ac-3*c)*y3-(1/2*ac-2*c)"},
     {"-(3/2*ac-3*c)*s+(1/2*ac-2*c)", "s/(ac+2*c)-1/2*ac", "s"}},
    {{"y2-5/ac*y3+1/(ac+2*c)", "y1-11/(ac+4*c)*y3-3/(ac+2*c)"},
     {"11/(ac+4*c)*s+3/(ac+2*c)", "5/ac*s-1/(ac+2*c)", "s"}},
    {{"y2+y3/(ac-2*c)-5/ac", "y1-(3/2*ac+3*c)*y3+(1/2*ac+2*c)"},
     {"(3/2*ac+3*c)*s-(1/2*ac+2*c)", "-s/(ac-2*c)+1/2*ac", "s"}},
    {{"y2+5/ac*y3-1/(ac-2*c)", "y1+11/(ac-4*c)*y3+3/(ac-2*c)"},
     {"-11/(ac-4*c)*s-3/(ac-2*c)", "-5/ac*s+1/(ac-2*c)", "s"}},
    {{"y2+2/(ac-3*c)*y3-2/(ac-3*c)", "y1+(1/4*ac+1/4*c)*y3+(1/4*ac+1/4*c)"},
     {"-(1/4*ac+1/4*c)*s-(1/4*ac+1/4*c)", "-2/(ac-3*c)*s-(1/4*ac+3/4*c)", "s"}},
    {{"y2+y3/(ac-2*c)-5/ac", "y1+(3/2*ac+3*c)*y3-(1/2*ac+2*c)"},
     {"-(3/2*ac+3*c)*s+(1/2*ac+2*c)", "-s/(ac-2*c)+1/2*ac", "s"}},
    {{"y2-2/(ac+3*c)*y3+2/(ac+3*c)", "y1-(1/4*ac-1/4*c)*y3-(1/4*ac-1/4*c)"},
     {"(1/4*ac-1/4*c)*s+(1/4*ac-1/4*c)", "2/(ac+3*c)*s+(1/4*ac-3/4*c)", "s"}},
    {{"y2-y3/(ac+2*c)+5/ac", "y1-(3/2*ac-3*c)*y3+(1/2*ac-2*c)"},
     {"(3/2*ac-3*c)*s-(1/2*ac-2*c)", "s/(ac+2*c)-1/2*ac", "s"}},
    {{"y2+2/(ac-3*c)*y3-2/(ac-3*c)", "y1-(1/4*ac+1/4*c)*y3-(1/4*ac+1/4*c)"},
     {"(1/4*ac+1/4*c)*s+(1/4*ac+1/4*c)", "-2/(ac-3*c)*s-(1/4*ac+3/4*c)", "s"}},
    {{"y2+5/ac*y3-1/(ac-2*c)", "y1-11/(ac-4*c)*y3-3/(ac-2*c)"},
     {"11/(ac-4*c)*s+3/(ac-2*c)", "-5/ac*s+1/(ac-2*c)", "s"}},
    {{"y2-2/(ac+3*c)*y3+2/(ac+3*c)", "y1+(1/4*ac-1/4*c)*y3+(1/4*ac-1/4*c)"},
     {"-(1/4*ac-1/4*c)*s-(1/4*ac-1/4*c)", "2/(ac+3*c)*s+(1/4*ac-3/4*c)", "s"}},
    {{"y2-5/ac*y3+1/(ac+2*c)", "y1+11/(ac+4*c)*y3+3/(ac+2*c)"},
     {"-11/(ac+4*c)*s-3/(ac+2*c)", "5/ac*s-1/(ac+2*c)", "s"}},
}};

inline std::string expand(std::string text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "ac") == 0) {
      out += "sqrt(10)";
      ++i;
    } else if (text[i] == 'c') {
      out += "sqrt(2)";
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace cubic::testing

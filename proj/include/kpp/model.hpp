#pragma once

#include "kpp/kernel.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

// A dispersal kernel paired with a KPP reaction: everything u_t = k*u - u + f(u)
// needs.
struct Model {
    Kernel kernel;
    ReactionKPP reaction;
};

}  // namespace kpp

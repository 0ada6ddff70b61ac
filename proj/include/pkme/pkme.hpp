#pragma once

#include "pkme/constructors.hpp"
#include "pkme/gates.hpp"
#include "pkme/io.hpp"
#include "pkme/structures.hpp"
#include "pkme/tensor.hpp"
#include "pkme/verifier.hpp"

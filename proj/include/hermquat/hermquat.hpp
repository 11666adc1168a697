#pragma once

#include "errors.hpp"
#include "exact_linalg.hpp"
#include "qfield.hpp"
#include "hermitian.hpp"
#include "quaternion.hpp"
#include "represent.hpp"
#include "sweep.hpp"

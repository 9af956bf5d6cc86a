/**
 * @file cdg.hpp
 * @brief Convenience header pulling in the whole library.
 */
#pragma once

#include "cdg/assembly.hpp"
#include "cdg/driver.hpp"
#include "cdg/element.hpp"
#include "cdg/linalg.hpp"
#include "cdg/mesh.hpp"
#include "cdg/postprocess.hpp"
#include "cdg/problems.hpp"
#include "cdg/space.hpp"

#pragma once

// Convenience include for the whole library.

#include "errors.hpp"
#include "matrix.hpp"
#include "smith.hpp"
#include "graph.hpp"
#include "sink_extension.hpp"
#include "ext.hpp"
#include "io.hpp"

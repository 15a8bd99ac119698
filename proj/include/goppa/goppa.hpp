#pragma once

#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/binmat.hpp"
#include "goppa/goppa_code.hpp"
#include "goppa/interpolation.hpp"
#include "goppa/decode.hpp"
#include "goppa/rng.hpp"
#include "goppa/dyadic.hpp"
#include "goppa/security.hpp"
#include "goppa/scheme.hpp"
#include "goppa/tables.hpp"

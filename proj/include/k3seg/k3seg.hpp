#pragma once

#include "k3seg/bundle.hpp"
#include "k3seg/errata.hpp"
#include "k3seg/errors.hpp"
#include "k3seg/families.hpp"
#include "k3seg/fock.hpp"
#include "k3seg/io.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/positivity.hpp"
#include "k3seg/rational.hpp"
#include "k3seg/reference.hpp"
#include "k3seg/sturm.hpp"
#include "k3seg/surface.hpp"
#include "k3seg/tautsegre.hpp"

#pragma once

#include <vse/basis_store.hpp>
#include <vse/diagram.hpp>
#include <vse/groebner.hpp>
#include <vse/invariant.hpp>
#include <vse/poly.hpp>
#include <vse/reference.hpp>
#include <vse/relations.hpp>
#include <vse/statesum.hpp>

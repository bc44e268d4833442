#ifndef MONAD_FORGE_HPP
#define MONAD_FORGE_HPP

#include <monad_forge/algebra.hpp>
#include <monad_forge/certificate.hpp>
#include <monad_forge/certify.hpp>
#include <monad_forge/cli.hpp>
#include <monad_forge/cohom.hpp>
#include <monad_forge/errors.hpp>
#include <monad_forge/field.hpp>
#include <monad_forge/invariants.hpp>
#include <monad_forge/linmat.hpp>
#include <monad_forge/monad.hpp>
#include <monad_forge/numeric.hpp>
#include <monad_forge/parallel.hpp>
#include <monad_forge/serialize.hpp>
#include <monad_forge/sparse.hpp>

#endif

#pragma once

#include "nclocal/catalog.hpp"
#include "nclocal/ck_k0.hpp"
#include "nclocal/elliptic.hpp"
#include "nclocal/ffield.hpp"
#include "nclocal/functor.hpp"
#include "nclocal/group.hpp"
#include "nclocal/intmat.hpp"
#include "nclocal/io.hpp"
#include "nclocal/numeric.hpp"
#include "nclocal/quadratic_cf.hpp"
#include "nclocal/zeta.hpp"

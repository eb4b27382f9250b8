#pragma once

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/padic.hpp"
#include "fourrank/arith/sieve.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/classgroup/analytic.hpp"
#include "fourrank/classgroup/forms.hpp"
#include "fourrank/classgroup/order.hpp"
#include "fourrank/classgroup/records.hpp"
#include "fourrank/classgroup/relations.hpp"
#include "fourrank/error.hpp"
#include "fourrank/moments.hpp"
#include "fourrank/parallel.hpp"
#include "fourrank/quadfield.hpp"
#include "fourrank/selmer.hpp"

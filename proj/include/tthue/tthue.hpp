#pragma once

#include "tthue/cubic_field.hpp"
#include "tthue/diophantine.hpp"
#include "tthue/dyadic.hpp"
#include "tthue/effective_bounds.hpp"
#include "tthue/enclosure.hpp"
#include "tthue/errors.hpp"
#include "tthue/lemmas.hpp"
#include "tthue/order_algebra.hpp"
#include "tthue/precision.hpp"
#include "tthue/search.hpp"
#include "tthue/twisted_form.hpp"

#pragma once

// Umbrella header.

#include "liftvf/corpus.hpp"
#include "liftvf/error.hpp"
#include "liftvf/germ.hpp"
#include "liftvf/jet_subspace.hpp"
#include "liftvf/jetspace.hpp"
#include "liftvf/ksm.hpp"
#include "liftvf/liftgen.hpp"
#include "liftvf/linalg.hpp"
#include "liftvf/localalg.hpp"
#include "liftvf/monomial.hpp"
#include "liftvf/parser.hpp"
#include "liftvf/polynomial.hpp"
#include "liftvf/rational.hpp"
#include "liftvf/report.hpp"
#include "liftvf/vector_field.hpp"
#include "liftvf/workspace.hpp"

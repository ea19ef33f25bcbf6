#pragma once

#include "ptchain/params.hpp"
#include "ptchain/dispersion.hpp"
#include "ptchain/pt_analysis.hpp"
#include "ptchain/criticality.hpp"
#include "ptchain/hermitian_map.hpp"
#include "ptchain/ed/pauli.hpp"
#include "ptchain/ed/spectral_match.hpp"
#include "ptchain/ed/exact_diag.hpp"
#include "ptchain/ed/free_fermion.hpp"

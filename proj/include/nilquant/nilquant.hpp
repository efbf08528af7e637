#pragma once

#include "nilquant/berezin.hpp"
#include "nilquant/ccr.hpp"
#include "nilquant/coherent.hpp"
#include "nilquant/config.hpp"
#include "nilquant/covariant.hpp"
#include "nilquant/experiment.hpp"
#include "nilquant/io.hpp"
#include "nilquant/lie.hpp"
#include "nilquant/magnetic.hpp"
#include "nilquant/pseudodiff.hpp"
#include "nilquant/tau.hpp"
#include "nilquant/verify.hpp"

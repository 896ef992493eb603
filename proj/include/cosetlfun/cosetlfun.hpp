#pragma once

#include "cosetlfun/error.hpp"
#include "cosetlfun/modular.hpp"
#include "cosetlfun/characters.hpp"
#include "cosetlfun/report.hpp"
#include "cosetlfun/gauss.hpp"
#include "cosetlfun/special.hpp"
#include "cosetlfun/lcentral.hpp"
#include "cosetlfun/moments.hpp"
#include "cosetlfun/vdc.hpp"
#include "cosetlfun/hybrid.hpp"
#include "cosetlfun/parallel.hpp"
#include "cosetlfun/cli.hpp"

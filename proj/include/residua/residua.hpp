#pragma once

#include "residua/arithmetic.hpp"
#include "residua/character_json.hpp"
#include "residua/characters.hpp"
#include "residua/charsums.hpp"
#include "residua/cyclotomic.hpp"
#include "residua/dickman.hpp"
#include "residua/lfunc.hpp"
#include "residua/residues.hpp"
#include "residua/smooth.hpp"
#include "residua/survey.hpp"

#pragma once

#include "ermcode/codec.hpp"
#include "ermcode/codes.hpp"
#include "ermcode/construction.hpp"
#include "ermcode/correlation.hpp"
#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"
#include "ermcode/serialize.hpp"

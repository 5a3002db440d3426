package main

import (
	"github.com/hyperledger/fabric-chaincode-go/shim"
	pb "github.com/hyperledger/fabric-protos-go/peer"
)

func Mirror(stub shim.ChaincodeStubInterface, args [][]byte) pb.Response {
	return stub.InvokeChaincode("ledger", args, "otherchannel")
}

package main

import (
	"github.com/hyperledger/fabric-chaincode-go/shim"
)

func Archive(stub shim.ChaincodeStubInterface) error {
	it, err := stub.GetQueryResult(`{"selector":{"status":"open"}}`)
	if err != nil {
		return err
	}
	defer it.Close()
	for it.HasNext() {
		kv, _ := it.Next()
		if err := stub.PutState(kv.Key, []byte("closed")); err != nil {
			return err
		}
	}
	return nil
}
